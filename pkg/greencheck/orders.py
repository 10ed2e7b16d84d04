"""Order polynomials of twisted maximal tori and of the finite group."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from loguru import logger

from greencheck.errors import InexactDivisionError, OrderError
from greencheck.exact import IntPoly, poly_det
from greencheck.weyl import WeylGroupData, gamma_conjugacy_classes, mat_mul


@dataclass(frozen=True)
class OrderData:
    """f_w, f and [G^F : T_w^F] for every gamma-class representative."""

    torus_polys: dict[int, IntPoly]
    """f_w keyed by representative index."""
    group_poly: IntPoly
    """f with |G^F| = f(q)."""
    index_polys: dict[int, IntPoly]
    """f / f_w keyed by representative index."""

    def torus_order(self, w: int, q: int) -> int:
        return int(self.torus_polys[w](q))

    def group_order(self, q: int) -> int:
        return int(self.group_poly(q))

    def index(self, w: int, q: int) -> int:
        return int(self.index_polys[w](q))


def torus_order_poly(weyl: WeylGroupData, w: int) -> IntPoly:
    """f_w = det(q * id - (gamma*)^{-1} w) on the lattice."""
    datum = weyl.datum
    twisted = mat_mul(datum.twist_inverse, weyl.matrices[w])
    n = datum.lattice_rank
    q = IntPoly.q()
    matrix = [
        [(q if i == j else IntPoly()) - twisted[i][j] for j in range(n)] for i in range(n)
    ]
    return poly_det(matrix)


def group_order_poly(weyl: WeylGroupData) -> IntPoly:
    """f = q^{|Phi+|} f_1 sum_{gamma(w) = w} q^{l(w)}."""
    poincare = IntPoly()
    for w in range(weyl.order):
        if weyl.gamma(w) == w:
            poincare += IntPoly.monomial(weyl.lengths[w])
    return (torus_order_poly(weyl, weyl.identity) * poincare).shift(weyl.num_positive_roots)


def index_poly(weyl: WeylGroupData, w: int) -> IntPoly:
    """[G^F : T_w^F] as the exact quotient f / f_w."""
    try:
        return group_order_poly(weyl).divide_exact(torus_order_poly(weyl, w))
    except InexactDivisionError as exc:
        msg = f'torus order does not divide group order for {weyl.label}, w = {weyl.word_label(w)}'
        raise OrderError(msg) from exc


@functools.cache
def order_data(weyl: WeylGroupData) -> OrderData:
    """Order polynomials for all gamma-class representatives, with invariant checks."""
    group = group_order_poly(weyl)
    torus: dict[int, IntPoly] = {}
    index: dict[int, IntPoly] = {}
    for cls in gamma_conjugacy_classes(weyl):
        f_w = torus_order_poly(weyl, cls.representative)
        if f_w.degree != weyl.dim_torus or f_w.leading != 1:
            msg = f'f_w for {cls.label} is not monic of degree {weyl.dim_torus}: {f_w}'
            raise OrderError(msg)
        if any(torus_order_poly(weyl, member) != f_w for member in cls.members):
            msg = f'f_w is not constant on the gamma-class of {cls.label}'
            raise OrderError(msg)
        torus[cls.representative] = f_w
        index[cls.representative] = index_poly(weyl, cls.representative)
    logger.debug(f'Order polynomial of {weyl.label}: {group}')
    return OrderData(torus, group, index)
