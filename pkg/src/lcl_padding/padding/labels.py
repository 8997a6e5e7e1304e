"""Input and output labels of padded graphs and of the lifted problem."""

from __future__ import annotations

from typing import Any, NamedTuple

from ..alphabet import UNIT, Finite, Powerset, Product, Union, power
from ..codec import register
from ..gadget.labels import GHalf, ghalf_alphabet, gnode_alphabet
from ..gadget.psi import ERREDGE, GADOK, PsiHalf, PsiNode, psi_g_sigmas
from ..nelcl import NeLclProblem, Sigma

EPS = "Eps"  # reserved; never produced by the gadget error problem
GAD_EDGE, PORT_EDGE = "GadEdge", "PortEdge"
PORT_ERR1, PORT_ERR2, NO_PORT_ERR = "PortErr1", "PortErr2", "NoPortErr"
STATUSES = (PORT_ERR1, PORT_ERR2, NO_PORT_ERR)

# half-edge gadget input written on PortEdge half-edges, which the gadget layer never reads
PORT_HALF_GAD = GHalf("Parent", 1)


@register
class PPNodeIn(NamedTuple):
    pi: Any
    gad: Any  # GNode: index, port, color


@register
class PPEdgeIn(NamedTuple):
    pi: Any
    kind: str  # GadEdge or PortEdge


@register
class PPHalfIn(NamedTuple):
    pi: Any
    gad: Any  # GHalf


@register
class SigmaList(NamedTuple):
    """Port set plus copied inputs and outputs of the virtual node; tuples are indexed by port - 1."""

    S: frozenset
    iv: Any
    ie: tuple
    ib: tuple
    ov: Any
    oe: tuple
    ob: tuple


@register
class PPNodeOut(NamedTuple):
    lst: SigmaList
    status: str
    psi: Any  # PsiNode


def is_err(x) -> bool:
    """True for labels of the error part of the gadget problem's output alphabet."""
    if isinstance(x, (PsiNode, PsiHalf)):
        return x.main != GADOK
    return x == ERREDGE


def sigma_list_alphabet(base: NeLclProblem, delta: int) -> Product:
    bi, bo = base.inputs, base.outputs
    return Product([Powerset(Finite(range(1, delta + 1))), bi.v, power(bi.e, delta), power(bi.b, delta),
                    bo.v, power(bo.e, delta), power(bo.b, delta)], SigmaList)


def canonical_list(base: NeLclProblem, delta: int) -> SigmaList:
    return sigma_list_alphabet(base, delta).first()


def pi_prime_sigmas(base: NeLclProblem, delta: int) -> tuple[Sigma, Sigma]:
    gin, gout = psi_g_sigmas(delta)
    bi = base.inputs
    inputs = Sigma(Product([bi.v, gnode_alphabet(delta)], PPNodeIn),
                   Product([bi.e, Finite([GAD_EDGE, PORT_EDGE])], PPEdgeIn),
                   Product([bi.b, ghalf_alphabet(delta)], PPHalfIn))
    outputs = Sigma(Product([sigma_list_alphabet(base, delta), Finite(STATUSES), gout.v], PPNodeOut),
                    Union([Finite([EPS]), gout.e]),
                    Union([Finite([EPS]), gout.b]))
    assert gin.e is UNIT
    return inputs, outputs
