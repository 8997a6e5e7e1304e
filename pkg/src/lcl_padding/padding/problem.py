"""The lifted problem on padded graphs as a node-edge-checkable LCL."""

from __future__ import annotations

from ..gadget.psi import psi_g_problem
from ..nelcl import EdgeConfig, NeLclProblem, NodeStar, Slot
from .labels import EPS, GAD_EDGE, NO_PORT_ERR, PORT_EDGE, PORT_ERR1, PORT_ERR2, is_err, pi_prime_sigmas


def _virtual_star(lst, base: NeLclProblem) -> NodeStar:
    """Node configuration of the virtual node encoded in a list label (ports in increasing order)."""
    slots = tuple(Slot(lst.ie[i - 1], lst.oe[i - 1], lst.ib[i - 1], lst.ob[i - 1]) for i in sorted(lst.S))
    return NodeStar(lst.iv, lst.ov, slots)


def _node_checker(base: NeLclProblem, delta: int, psi_g: NeLclProblem):
    def node_ok(star: NodeStar) -> list[str]:
        vin, vout = star.vin, star.vout
        gs = [s for s in star.slots if s.ein.kind == GAD_EDGE]
        ps = [s for s in star.slots if s.ein.kind == PORT_EDGE]
        bad = []
        if any(s.eout != EPS or s.bout != EPS for s in ps) or any(s.eout == EPS or s.bout == EPS for s in gs):
            bad.append("pp.1")
        else:
            proj = NodeStar(vin.gad, vout.psi, tuple(Slot(None, s.eout, s.bin.gad, s.bout) for s in gs))
            bad += [f"pp.2/{c}" for c in psi_g.node_ok(proj)]
        port = vin.gad.port
        if (port != 0 and len(ps) != 1) != (vout.status == PORT_ERR2):
            bad.append("pp.3")
        if is_err(vout.psi) or any(is_err(s.eout) or is_err(s.bout) for s in star.slots):
            return bad  # error escape: nothing below applies
        lst = vout.lst
        if port != 0 and (port in lst.S) != (vout.status == NO_PORT_ERR):
            bad.append("pp.5a")
        if port == 1 and lst.iv != vin.pi:
            bad.append("pp.5b")
        if port != 0 and port in lst.S and any(lst.ie[port - 1] != s.ein.pi or lst.ib[port - 1] != s.bin.pi
                                               for s in ps):
            bad.append("pp.5c")
        if base.node_ok(_virtual_star(lst, base)):
            bad.append("pp.5d")
        return bad
    return node_ok


def _edge_checker(base: NeLclProblem, delta: int, psi_g: NeLclProblem):
    def edge_ok(c: EdgeConfig) -> list[str]:
        bad = []
        kind = c.ein.kind
        outs = (c.eout, c.buout, c.bvout)
        if (kind == PORT_EDGE and any(x != EPS for x in outs)) or (kind == GAD_EDGE and EPS in outs):
            bad.append("pp.1")
        elif kind == GAD_EDGE:
            proj = EdgeConfig(c.uin.gad, c.uout.psi, c.vin.gad, c.vout.psi, None, c.eout,
                              c.buin.gad, c.buout, c.bvin.gad, c.bvout)
            bad += [f"pp.2/{x}" for x in psi_g.edge_ok(proj)]
        pu, pv = c.uin.gad.port, c.vin.gad.port
        if kind == PORT_EDGE:
            if pu and pv and not is_err(c.uout.psi) and not is_err(c.vout.psi) \
                    and PORT_ERR1 in (c.uout.status, c.vout.status):
                bad.append("pp.4")
            for (px, xo), (py, yo) in (((pu, c.uout), (pv, c.vout)), ((pv, c.vout), (pu, c.uout))):
                if px and (not py or is_err(xo.psi) or is_err(yo.psi)) and xo.status == NO_PORT_ERR:
                    if "pp.4" not in bad:
                        bad.append("pp.4")
        if any(is_err(x) for x in (c.uout.psi, c.vout.psi) + outs):
            return bad  # error escape
        lu, lv = c.uout.lst, c.vout.lst
        if kind == GAD_EDGE:
            if lu != lv:
                bad.append("pp.6a")
        elif pu and pv and pu in lu.S and pv in lv.S:
            i, j = pu - 1, pv - 1
            cfg = EdgeConfig(lu.iv, lu.ov, lv.iv, lv.ov, lu.ie[i], lu.oe[i], lu.ib[i], lu.ob[i], lv.ib[j], lv.ob[j])
            if lu.ie[i] != lv.ie[j] or lu.oe[i] != lv.oe[j] or base.edge_ok(cfg):
                bad.append("pp.6b")
        return bad
    return edge_ok


def pi_prime_problem(base: NeLclProblem, delta: int) -> NeLclProblem:
    """The padded version of ``base`` for gadgets with ``delta`` ports."""
    psi_g = psi_g_problem(delta)
    inputs, outputs = pi_prime_sigmas(base, delta)
    return NeLclProblem(f"pi-prime[{base.name},{delta}]", inputs, outputs,
                        _node_checker(base, delta, psi_g), _edge_checker(base, delta, psi_g), (base, delta))


def padding_levels(problem: NeLclProblem) -> list[NeLclProblem]:
    """The chain of problems ``problem`` was padded from, innermost first."""
    chain = [problem]
    while problem.name.startswith("pi-prime["):
        problem = problem.params[0]
        chain.append(problem)
    return chain[::-1]
