"""Non-abelian extensions of one Nijenhuis conformal algebra by another.

An extension 0 -> H -> E -> L -> 0 with a section s yields a triple
(chi, rho, Phi): the bracket defect of the section, the induced action of L
on H, and the operator defect R s - s N.  Conversely, a triple satisfying
the cocycle conditions rebuilds an extension on L (+) H.  The conditions
are checked component-wise on the candidate total structure, so every
identity here is literally a restriction of the conformal axioms or of the
Nijenhuis identity -- no separate sign conventions to maintain.

Equivalence of triples is decided exactly: by direct verification for a
supplied comparison map tau, or, when H is abelian, by a linear solve for
tau over a bounded polynomial coefficient space (with an honest
``infeasible`` verdict when the bound admits no solution).
"""

from __future__ import annotations

from fractions import Fraction

from .cohomology import Cochain, _cochain_vector, act_form
from .errors import ModuleMismatchError, PreconditionError
from .lca import (
    LCA,
    ConfLinMap,
    RepTable,
    check_morphism,
    dagger_substitute,
    eval_bracket,
    _sum_module,
)
from .linalg import (
    is_split_injection,
    is_split_surjection,
    poly_unimodular_inverse,
    solve,
)
from .nijenhuis import NijenhuisLCA
from .poly import Poly
from .report import Report, first_witness


class ExtensionData:
    """An extension diagram with a chosen section.

    ``total`` is (E, R), ``sub`` is (H, Q), ``quot`` is (L, N); ``inc``,
    ``proj`` and ``section`` are the maps of the diagram.  The invariants
    live in :func:`check_extension`, not in the constructor, so that broken
    diagrams can still be represented in negative tests.
    """

    def __init__(self, total, sub, quot, inc, proj, section):
        e_mod = total.algebra.module
        if inc.source != sub.algebra.module or inc.target != e_mod:
            raise ModuleMismatchError("inc must map H into E")
        if proj.source != e_mod or proj.target != quot.algebra.module:
            raise ModuleMismatchError("proj must map E onto L")
        if section.source != quot.algebra.module or section.target != e_mod:
            raise ModuleMismatchError("section must map L into E")
        self.total = total
        self.sub = sub
        self.quot = quot
        self.inc = inc
        self.proj = proj
        self.section = section

    def retraction(self, section=None):
        """The H-valued retraction r with r inc = Id and r section = 0.

        The columns of inc and the section form a Q[del]-basis of E exactly
        when the diagram splits as modules; the retraction is the H-block of
        the inverse basis matrix.
        """
        section = section or self.section
        e_rank = self.total.algebra.module.rank
        h_rank = self.sub.algebra.module.rank
        matrix = [
            self.inc.matrix[i] + section.matrix[i] for i in range(e_rank)
        ]
        inverse = poly_unimodular_inverse(matrix)
        if inverse is None:
            raise PreconditionError(
                "inc and section do not split E over Q[del]"
            )
        return ConfLinMap(
            self.total.algebra.module,
            self.sub.algebra.module,
            inverse[:h_rank],
        )


def check_extension(ext):
    """Short-exact-sequence and operator-compatibility invariants."""
    report = Report("extension")
    report.add("proj-inc-zero", ext.proj.compose(ext.inc).is_zero())
    ident = ConfLinMap.identity(ext.quot.algebra.module)
    report.add(
        "proj-section-identity",
        (ext.proj.compose(ext.section) - ident).is_zero(),
    )
    report.add("inc-split-injective", is_split_injection(ext.inc.matrix))
    report.add("proj-split-surjective", is_split_surjection(ext.proj.matrix))
    m_inc = check_morphism(ext.sub.algebra, ext.total.algebra, ext.inc)
    report.add("inc-morphism", m_inc.passed, m_inc.witness_of("morphism"))
    m_proj = check_morphism(ext.total.algebra, ext.quot.algebra, ext.proj)
    report.add("proj-morphism", m_proj.passed, m_proj.witness_of("morphism"))
    report.add(
        "operator-sub",
        (ext.total.n.compose(ext.inc) - ext.inc.compose(ext.sub.n)).is_zero(),
    )
    report.add(
        "operator-quot",
        (ext.proj.compose(ext.total.n) - ext.quot.n.compose(ext.proj)).is_zero(),
    )
    return report


class NonAbelianCocycle:
    """Triple (chi, rho, Phi) of an extension with respect to a section.

    ``chi`` is a degree-2 cochain valued in H, ``rho`` a RepTable-shaped
    action of L on H (not necessarily a representation: its curvature is
    the adjoint of chi), ``phi`` a Q[del]-linear map L -> H.
    """

    def __init__(self, chi, rho, phi):
        if chi.degree != 2:
            raise ModuleMismatchError("chi must be a degree-2 cochain")
        if chi.target != rho.module:
            raise ModuleMismatchError("chi and rho have different coefficients")
        if phi.source != rho.algebra.module or phi.target != rho.module:
            raise ModuleMismatchError("phi endpoints do not match the triple")
        self.chi = chi
        self.rho = rho
        self.phi = phi

    def __eq__(self, other):
        if not isinstance(other, NonAbelianCocycle):
            return NotImplemented
        return (
            self.chi == other.chi
            and self.rho.action == other.rho.action
            and self.phi == other.phi
        )


def extract_cocycle(ext, section=None):
    """The triple of an extension: chi_lam(p,q) = [s p lam s q] - s[p lam q],
    rho(p)_lam h = [s p lam h], Phi = R s - s N.

    Every value is checked to lie in the kernel of proj before being
    rewritten in H-coordinates through the retraction.
    """
    if section is None:
        section = ext.section
    retraction = ext.retraction(section)
    l_mod = ext.quot.algebra.module
    h_mod = ext.sub.algebra.module
    total = ext.total.algebra

    def to_h(value, where):
        if not ext.proj.apply(value).is_zero():
            raise PreconditionError("%s escapes the kernel of proj" % where)
        return retraction.apply(value)

    rep = RepTable(ext.quot.algebra, h_mod)
    chi = Cochain(2, rep)
    rho = RepTable(ext.quot.algebra, h_mod)
    for i in range(l_mod.rank):
        sp = section.apply(l_mod.basis_elem(i))
        for j in range(l_mod.rank):
            sq = section.apply(l_mod.basis_elem(j))
            value = eval_bracket(total, sp, sq) - section.apply(
                ext.quot.algebra.bracket_basis(i, j)
            )
            chi.set_value((i, j), to_h(value, "chi(%d,%d)" % (i, j)))
        for j in range(h_mod.rank):
            value = eval_bracket(
                total, sp, ext.inc.apply(h_mod.basis_elem(j))
            )
            rho.set_action(i, j, to_h(value, "rho(%d,%d)" % (i, j)).coords)
    defect = ext.total.n.compose(section) - section.compose(ext.quot.n)
    columns = [
        to_h(defect.apply(l_mod.basis_elem(i)), "phi(%d)" % i)
        for i in range(l_mod.rank)
    ]
    phi = ConfLinMap(
        l_mod,
        h_mod,
        [
            [columns[c].coords[r] for c in range(l_mod.rank)]
            for r in range(h_mod.rank)
        ],
    )
    return NonAbelianCocycle(chi, rho, phi)


def _candidate_total(cocycle, quot, sub):
    """The bracket table and operator matrix carried by a triple on L (+) H.

    [(p,h) lam (q,k)] = ([p lam q], rho(p)_lam k - rho(q)_{-del-lam} h
    + chi_lam(p,q) + [h lam k]);  R(p,h) = (N p, Q h + Phi p).
    No axiom is assumed: the result is raw material for the checks below.
    """
    l_alg, h_alg = quot.algebra, sub.algebra
    l_mod, h_mod = l_alg.module, h_alg.module
    rank_l, rank_h = l_mod.rank, h_mod.rank
    total_mod = _sum_module(l_mod, h_mod)
    total = LCA(total_mod)
    zero_l = [Poly.zero(1)] * rank_l
    for i in range(rank_l):
        for j in range(rank_l):
            value = l_alg.table.get(i, j)
            chi_ij = cocycle.chi.value((i, j)).coords
            total.set_bracket(
                i, j, list(value) + [c.with_arity(1) for c in chi_ij]
            )
        for j in range(rank_h):
            total.set_bracket(
                i, rank_l + j, zero_l + list(cocycle.rho.action.get(i, j))
            )
            flipped = cocycle.rho.act_basis(i, j, slot=2, arity=2)
            flipped = dagger_substitute(flipped, 2, keep=[1])
            total.set_bracket(
                rank_l + j, i, zero_l + [-c for c in flipped.coords]
            )
    for i in range(rank_h):
        for j in range(rank_h):
            total.set_bracket(
                rank_l + i, rank_l + j, zero_l + list(h_alg.table.get(i, j))
            )
    zero = Poly.zero(0)
    r_matrix = [
        [quot.n.matrix[r][c] for c in range(rank_l)] + [zero] * rank_h
        for r in range(rank_l)
    ]
    for r in range(rank_h):
        r_matrix.append(
            [cocycle.phi.matrix[r][c] for c in range(rank_l)]
            + [sub.n.matrix[r][c] for c in range(rank_h)]
        )
    return total, ConfLinMap(total_mod, total_mod, r_matrix), rank_l


def _skew_failures(total, pairs):
    failures = []
    for i, j in pairs:
        lhs = total.bracket_basis(i, j, slot=1)
        flipped = total.bracket_basis(j, i, slot=2, arity=2)
        residual = lhs + dagger_substitute(flipped, 2, keep=[1])
        if not residual.is_zero():
            failures.append(((i, j), repr(residual)))
    return failures


def _jacobi_failures(total, triples):
    module = total.module
    failures = []
    for i, j, k in triples:
        ei = module.basis_elem(i)
        ej = module.basis_elem(j)
        term1 = eval_bracket(
            total, ei, total.bracket_basis(j, k, slot=2, arity=2), slot=1
        )
        term2 = eval_bracket(
            total, ej, total.bracket_basis(i, k, slot=1, arity=2), slot=2
        )
        outer = eval_bracket(
            total,
            total.bracket_basis(i, j, slot=1, arity=3),
            module.basis_elem(k),
            slot=3,
        )
        lam12 = Poly.lam(1, 3) + Poly.lam(2, 3)
        term3 = outer.substitute(3, lam12).shrink(2)
        residual = term1 - term2 - term3
        if not residual.is_zero():
            failures.append(((i, j, k), repr(residual)))
    return failures


def _nijenhuis_failures(total, operator, pairs):
    module = total.module
    failures = []
    for i, j in pairs:
        ei = module.basis_elem(i)
        ej = module.basis_elem(j)
        nei = operator.apply(ei)
        nej = operator.apply(ej)
        lhs = eval_bracket(total, nei, nej)
        inner = (
            eval_bracket(total, nei, ej)
            + eval_bracket(total, ei, nej)
            - operator.apply(eval_bracket(total, ei, ej))
        )
        residual = lhs - operator.apply(inner)
        if not residual.is_zero():
            failures.append(((i, j), repr(residual)))
    return failures


def check_nonabelian_cocycle(cocycle, quot, sub):
    """The defining identities of a non-abelian 2-cocycle triple.

    Each named check is the corresponding component restriction of the
    conformal axioms (or of the Nijenhuis identity) on the candidate total
    structure:

    * ``chi-skew``         -- skew-symmetry on L-L pairs;
    * ``rho-derivation``   -- Jacobi on (L, H, H) triples;
    * ``curvature``        -- Jacobi on (L, L, H) triples: the failure of
      rho to be a representation equals the adjoint action of chi;
    * ``jacobi``           -- Jacobi on (L, L, L) triples (the chi 2-cocycle
      condition twisted by rho);
    * ``operator-module``  -- the Nijenhuis identity on mixed pairs;
    * ``operator-bracket`` -- the Nijenhuis identity on L-L pairs.

    The remaining components (H-H skew and Jacobi, H-H Nijenhuis) are the
    axioms of the validated inputs, so a passing report is exactly what
    :func:`build_extension` needs.
    """
    total, operator, rank_l = _candidate_total(cocycle, quot, sub)
    rank = total.module.rank
    l_idx = range(rank_l)
    h_idx = range(rank_l, rank)
    report = Report("nonabelian-cocycle")
    pairs_ll = [(i, j) for i in l_idx for j in l_idx]
    failures = _skew_failures(total, pairs_ll)
    report.add("chi-skew", not failures, first_witness(failures))
    failures = _jacobi_failures(
        total, [(i, a, b) for i in l_idx for a in h_idx for b in h_idx]
    )
    report.add("rho-derivation", not failures, first_witness(failures))
    failures = _jacobi_failures(
        total, [(i, j, a) for i in l_idx for j in l_idx for a in h_idx]
    )
    report.add("curvature", not failures, first_witness(failures))
    failures = _jacobi_failures(
        total, [(i, j, k) for i in l_idx for j in l_idx for k in l_idx]
    )
    report.add("jacobi", not failures, first_witness(failures))
    mixed = [(i, a) for i in l_idx for a in h_idx] + [
        (a, i) for a in h_idx for i in l_idx
    ]
    failures = _nijenhuis_failures(total, operator, mixed)
    report.add("operator-module", not failures, first_witness(failures))
    failures = _nijenhuis_failures(total, operator, pairs_ll)
    report.add("operator-bracket", not failures, first_witness(failures))
    return report


def build_extension(cocycle, quot, sub):
    """The extension on L (+) H carried by a non-abelian 2-cocycle.

    The total structure is constructor-validated, so the output genuinely
    satisfies the conformal axioms and the Nijenhuis identity; the canonical
    inclusion, projection and section are returned alongside.
    """
    pre = check_nonabelian_cocycle(cocycle, quot, sub)
    if not pre.passed:
        raise PreconditionError(
            "triple is not a cocycle: %s"
            % "; ".join(line for line in pre.lines() if "fail" in line)
        )
    total, operator, rank_l = _candidate_total(cocycle, quot, sub)
    total_n = NijenhuisLCA(total, operator)
    l_mod = quot.algebra.module
    h_mod = sub.algebra.module
    total_mod = total.module
    inc = ConfLinMap(
        h_mod,
        total_mod,
        [
            [Fraction(r == rank_l + c) for c in range(h_mod.rank)]
            for r in range(total_mod.rank)
        ],
    )
    proj = ConfLinMap(
        total_mod,
        l_mod,
        [[Fraction(r == c) for c in range(total_mod.rank)] for r in range(rank_l)],
    )
    section = ConfLinMap(
        l_mod,
        total_mod,
        [[Fraction(r == c) for c in range(l_mod.rank)] for r in range(total_mod.rank)],
    )
    return ExtensionData(total_n, sub, quot, inc, proj, section)


def _equivalence_residuals(c1, c2, quot, sub, tau):
    """Residual cochains of the three equivalence identities for a tau.

    action:   rho(p)_lam h - rho'(p)_lam h - [tau(p) lam h]_H;
    bracket:  chi - chi' - [tau p lam tau q]_H + tau[p lam q]
              - rho'(p)_lam tau q + rho'(q)_{-del-lam} tau p;
    operator: Phi - Phi' - Q tau + tau N.
    """
    l_alg, h_alg = quot.algebra, sub.algebra
    l_mod, h_mod = l_alg.module, h_alg.module
    lam1 = Poly.lam(1, 1)
    dag1 = -Poly.del_(1) - lam1
    rep = RepTable(l_alg, h_mod)

    action_res = Cochain(2, rep)
    bracket_res = Cochain(2, rep)
    for i in range(l_mod.rank):
        p = l_mod.basis_elem(i)
        tp = tau.apply(p)
        for j in range(h_mod.rank):
            h = h_mod.basis_elem(j)
            residual = (
                c1.rho.act_basis(i, j)
                - c2.rho.act_basis(i, j)
                - act_form(h_alg.table, h_mod, tp, h, lam1, 1)
            )
            action_res.set_value((i, j), residual)
        for j in range(l_mod.rank):
            q = l_mod.basis_elem(j)
            tq = tau.apply(q)
            residual = (
                c1.chi.value((i, j))
                - c2.chi.value((i, j))
                - act_form(h_alg.table, h_mod, tp, tq, lam1, 1)
                + tau.apply(l_alg.bracket_basis(i, j))
                - act_form(c2.rho.action, h_mod, p, tq, lam1, 1)
                + act_form(c2.rho.action, h_mod, q, tp, dag1, 1)
            )
            bracket_res.set_value((i, j), residual)

    operator_res = Cochain(1, rep)
    defect = c1.phi - c2.phi - sub.n.compose(tau) + tau.compose(quot.n)
    for i in range(l_mod.rank):
        operator_res.set_value((i,), defect.apply(l_mod.basis_elem(i)))
    return action_res, bracket_res, operator_res


def _cochain_witness(res):
    if res.is_zero():
        return None
    key = min(res.values)
    return "at=%s residual=[%s]" % (
        ",".join(map(str, key)),
        repr(res.values[key]),
    )


def _default_tau_bound(c1, c2, quot):
    degree = 1
    for cocycle in (c1, c2):
        for value in cocycle.chi.values.values():
            for p in value.coords:
                degree = max(degree, p.total_degree())
        for row in cocycle.phi.matrix:
            for p in row:
                degree = max(degree, p.total_degree())
    for value in quot.algebra.table.entries.values():
        for p in value:
            degree = max(degree, p.total_degree())
    return degree


def cocycle_equivalence(c1, c2, quot, sub, tau=None, bound=None):
    """Equivalence of two triples: verify a given tau, or solve for one.

    With ``tau`` supplied, the three identities are checked directly (H may
    be non-abelian).  Without it, the H-bracket must be zero -- the
    identities are then affine in tau -- and a tau with entries of degree
    <= ``bound`` is solved for exactly; the default bound is the largest
    polynomial degree occurring in the two triples and the L-bracket.
    Returns (report, tau-or-None); a failed solve reports ``infeasible``
    with the bound it exhausted.
    """
    l_mod = quot.algebra.module
    h_mod = sub.algebra.module
    report = Report("cocycle-equivalence")
    if tau is not None:
        residuals = _equivalence_residuals(c1, c2, quot, sub, tau)
        for name, res in zip(("action", "bracket", "operator"), residuals):
            report.add(name, res.is_zero(), _cochain_witness(res))
        return report, tau

    abelian = not sub.algebra.table.entries
    if not abelian:
        raise PreconditionError("solving for tau needs an abelian H-bracket")
    if bound is None:
        bound = _default_tau_bound(c1, c2, quot)
    zero_tau = ConfLinMap.zero(l_mod, h_mod)
    index = {}
    base_vec = {}
    for tag, res in enumerate(
        _equivalence_residuals(c1, c2, quot, sub, zero_tau)
    ):
        for slot, coeff in _cochain_vector(res, index).items():
            base_vec[(tag, slot)] = coeff
    unknowns = []
    columns = []
    for r in range(h_mod.rank):
        for c in range(l_mod.rank):
            for e in range(bound + 1):
                matrix = [
                    [Poly.zero(0)] * l_mod.rank for _ in range(h_mod.rank)
                ]
                matrix[r][c] = Poly(0, {(e,): Fraction(1)})
                unknowns.append((r, c, e))
                column = {}
                residuals = _equivalence_residuals(
                    c1, c2, quot, sub, ConfLinMap(l_mod, h_mod, matrix)
                )
                for tag, res in enumerate(residuals):
                    for slot, coeff in _cochain_vector(res, index).items():
                        key = (tag, slot)
                        column[key] = coeff - base_vec.get(key, Fraction(0))
                for key in base_vec:
                    column.setdefault(key, Fraction(0))
                columns.append(column)
    keys = sorted(set(base_vec) | {k for col in columns for k in col})
    rows = [[col.get(key, Fraction(0)) for col in columns] for key in keys]
    rhs = [-base_vec.get(key, Fraction(0)) for key in keys]
    solution = solve(rows, rhs) if keys else [Fraction(0)] * len(unknowns)
    if solution is None:
        report.add("solve", False, "infeasible within degree bound %d" % bound)
        return report, None
    matrix = [
        [Poly.zero(0) for _ in range(l_mod.rank)] for _ in range(h_mod.rank)
    ]
    for (r, c, e), coeff in zip(unknowns, solution):
        if coeff:
            matrix[r][c] = matrix[r][c] + Poly(0, {(e,): coeff})
    tau = ConfLinMap(l_mod, h_mod, matrix)
    verify, _ = cocycle_equivalence(c1, c2, quot, sub, tau=tau)
    report.add(
        "solve",
        verify.passed,
        None if verify.passed else "witness fails re-check",
    )
    return report, tau


def check_extension_equivalence(e1, e2, mapping):
    """mapping : E1 -> E2 is an equivalence of extensions.

    Bracket and operator morphism properties, together with commutation
    with both legs of the diagrams.
    """
    report = Report("extension-equivalence")
    morph = check_morphism(e1.total.algebra, e2.total.algebra, mapping)
    report.add("bracket-morphism", morph.passed, morph.witness_of("morphism"))
    report.add(
        "operator-morphism",
        (mapping.compose(e1.total.n) - e2.total.n.compose(mapping)).is_zero(),
    )
    report.add("inc-compatible", (mapping.compose(e1.inc) - e2.inc).is_zero())
    report.add(
        "proj-compatible", (e2.proj.compose(mapping) - e1.proj).is_zero()
    )
    return report


def shear_map(ext, tau):
    """gamma(x) = x + inc(tau(proj x)) on the total module of ``ext``.

    For a tau realizing a self-equivalence of the extracted triple this is
    an extension equivalence fixing both legs of the diagram.
    """
    if (
        tau.source != ext.quot.algebra.module
        or tau.target != ext.sub.algebra.module
    ):
        raise ModuleMismatchError("tau must map L into H")
    e_mod = ext.total.algebra.module
    return ConfLinMap.identity(e_mod) + ext.inc.compose(tau).compose(ext.proj)
