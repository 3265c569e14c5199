"""Group-based LD operations: conjugacy x*y = x⁻¹yx and symmetric conjugacy
x∘y = xy⁻¹x over any concrete group supplied as a `GroupOpsCtx`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterable

from .magma import OpId, Platform
from .perms import Perm, decode_perm, encode_perm, random_perm


@dataclass
class GroupOpsCtx:
    """Concrete-group plumbing: multiply/invert/identity plus encodings."""

    name: str
    multiply: Callable[[Any, Any], Any]
    invert: Callable[[Any], Any]
    identity: Any
    encode: Callable[[Any], bytes]
    decode: Callable[[bytes, int], tuple[Any, int]] | None = None
    rand: Callable[[Any], Any] | None = None
    elements: Callable[[], Iterable] | None = None  # finite groups only
    eq: Callable[[Any, Any], bool] | None = None


def conj(ctx: GroupOpsCtx, x, y):
    """x * y = x⁻¹ y x."""
    return ctx.multiply(ctx.multiply(ctx.invert(x), y), x)


def symm_conj(ctx: GroupOpsCtx, x, y):
    """x ∘ y = x y⁻¹ x."""
    return ctx.multiply(ctx.multiply(x, ctx.invert(y)), x)


def perm_group_ctx(n: int) -> GroupOpsCtx:
    """S_n with apply-first composition."""
    return GroupOpsCtx(
        name=f"S{n}",
        multiply=lambda a, b: a * b,
        invert=lambda a: a.inv(),
        identity=Perm(),
        encode=encode_perm,
        decode=decode_perm,
        rand=lambda rng: random_perm(n, rng),
        elements=lambda: (Perm(images) for images in itertools.permutations(range(1, n + 1))),
    )


def group_platform(ctx: GroupOpsCtx, kind: str = "conj") -> tuple[Platform, OpId]:
    """Platform over ctx's group carrying conjugacy or symmetric conjugacy."""
    plat = Platform(
        f"{ctx.name}-{kind}",
        encode=ctx.encode,
        decode=ctx.decode,
        eq=ctx.eq,
        rand_element=ctx.rand,
    )
    if kind == "conj":
        op = plat.register(lambda x, y: conj(ctx, x, y), label="*", kind="conj", ctx=ctx)
    elif kind == "symm":
        op = plat.register(lambda x, y: symm_conj(ctx, x, y), label="o", kind="symm", ctx=ctx)
    else:
        raise ValueError(f"unknown group op kind {kind!r}")
    return plat, op
