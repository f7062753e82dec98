"""
Homogenization Pipeline
Builds H(R) and H(A) by padding relations with a central degree-1 variable,
verifies the graded skew PBW conditions, specializes the central variable
to 1 or 0 and emits the associated graded presentation G(A)
"""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Mapping, Optional, Union

from algebra.coeffring import (
    DerivSpec, EndoSpec, RElement, RingPresentation, Rule, r_gen, r_zero, reduce,
)
from algebra.errors import ContractError, DomainError, StructuralError
from algebra.freealg import FreePoly, deglex_key, fp_homogenize
from algebra.skewext import (
    CrossRelation, ExtensionPresentation, build_extension, check_bijective, check_sigma_filtered,
    full_presentation,
)
from algebra.verdicts import VerdictReport
from utils.config import HOMOGENIZING_NAMES
from utils.logger import get_logger


logger = get_logger('homog')


@dataclass(frozen=True)
class GradedPresentation(RingPresentation):
    """Ring presentation with homogeneous rules and an optional central generator"""
    central: Optional[str] = None


@dataclass(frozen=True)
class GradedExtensionPresentation(ExtensionPresentation):
    central: Optional[str] = None


def choose_homogenizing_name(used: Iterable[str]) -> str:
    used = set(used)
    for name in HOMOGENIZING_NAMES:
        if name not in used:
            return name
    raise StructuralError(f"No free homogenizing variable among {HOMOGENIZING_NAMES}")


def central_normal_form(f: FreePoly, z: str) -> FreePoly:
    """Move every occurrence of the central letter z to the front of its word"""
    terms = {}
    for w, c in f.items():
        moved = (z,) * w.count(z) + tuple(a for a in w if a != z)
        terms[moved] = terms.get(moved, 0) + c
    return FreePoly(f.alphabet, terms)


def _centrality_rules(generators, z: str, alphabet) -> tuple:
    return tuple(Rule((g, z), FreePoly.monomial(alphabet, (z, g))) for g in generators)


# ============================================================
# H(R) and H(A)
# ============================================================

def homogenize_ring(R: RingPresentation, z: Optional[str] = None) -> GradedPresentation:
    """
    H(R) = K<z, t_1..t_m>/(homogenized relations, t_k z - z t_k)

    z is the smallest generator so homogenized rules stay deglex-decreasing.
    """
    z = z or choose_homogenizing_name(R.generators)
    if z in R.alphabet:
        raise StructuralError(f"Homogenizing variable {z!r} is already a generator of {R.name!r}")
    generators = (z,) + R.generators
    alphabet = frozenset(generators)
    rules = []
    for rule in R.rules:
        homogeneous = central_normal_form(fp_homogenize(rule.relation(), z), z)
        lhs = FreePoly.monomial(alphabet, rule.lhs)
        rules.append(Rule(rule.lhs, lhs - homogeneous))
    rules.extend(_centrality_rules(R.generators, z, alphabet))
    return GradedPresentation(
        name=f'H({R.name})', generators=generators, rules=tuple(rules),
        parameters=R.parameters, central=z,
    )


def _pad(c: RElement, target: int, z: str, H: RingPresentation) -> RElement:
    """c_k -> c_k z^(target - k) per homogeneous component; zero stays zero"""
    terms = {}
    for w, coeff in c.poly.items():
        exponent = target - len(w)
        if exponent < 0:
            raise ContractError(f"Degree {len(w)} term exceeds the homogenization degree {target}")
        terms[(z,) * exponent + w] = coeff
    return reduce(FreePoly(H.alphabet, terms), H)


def _padded_table(images, target: int, z: str, H: RingPresentation) -> dict:
    return {g: _pad(img, target, z, H) for g, img in images}


def homogenize_extension(A: ExtensionPresentation, z: Optional[str] = None) -> GradedExtensionPresentation:
    """
    H(A) over H(R)

    sigma^(t) = sigma(t) z^(1 - deg), delta^(t) = delta(t) z^(2 - deg),
    sigma^(z) = z, delta^(z) = 0; r0 padded to degree 2 and r_l to degree 1.
    """
    # Require sigma-filtered and bijective input
    filtered = check_sigma_filtered(A)
    if not filtered.passed:
        failed = ', '.join(v.condition for v in filtered.failures())
        raise ContractError(f"{A.name!r} is not sigma-filtered ({failed}); homogenization needs it")
    bijective = check_bijective(A)
    if bijective.status == 'failed':
        raise ContractError(f"{A.name!r} is not bijective: {'; '.join(bijective.witnesses)}")
    if bijective.status == 'unverified':
        logger.warning(f"HOMOGENIZE | {A.name} | bijectivity unverified: no inverse tables")

    # Homogenize the base ring
    z = z or choose_homogenizing_name(A.base.generators + A.variables)
    if z in A.variables:
        raise StructuralError(f"Homogenizing variable {z!r} is already a variable of {A.name!r}")
    HR = homogenize_ring(A.base, z)
    z_elem = r_gen(HR, z)

    # Pad sigma and delta images with powers of z
    sigmas, deltas = [], []
    for s, d in zip(A.sigma, A.delta):
        images = _padded_table(s.images, 1, z, HR)
        images[z] = z_elem
        inverse = None
        if s.inverse_images is not None and all(img.deg <= 1 for _, img in s.inverse_images):
            inverse = _padded_table(s.inverse_images, 1, z, HR)
            inverse[z] = z_elem
        sigma_hat = EndoSpec.from_maps(images, inverse)
        delta_images = _padded_table(d.images, 2, z, HR)
        delta_images[z] = r_zero(HR)
        sigmas.append(sigma_hat)
        deltas.append(DerivSpec.from_maps(delta_images, sigma_hat))

    # Pad cross relations to total degree 2
    cross = [
        CrossRelation(
            c.j, c.i, _pad(c.d, 0, z, HR), _pad(c.r0, 2, z, HR),
            tuple(_pad(r, 1, z, HR) for r in c.r),
        )
        for c in A.cross
    ]
    built = build_extension(f'H({A.name})', HR, A.variables, sigmas, deltas, cross, A.notes)
    H = as_graded(built, z)
    logger.info(f"HOMOGENIZE | {A.name} | variable: {z} | rules: {len(HR.rules) + len(A.cross)}")
    return H


def as_graded(A: ExtensionPresentation, z: str) -> GradedExtensionPresentation:
    return GradedExtensionPresentation(
        name=A.name, base=A.base, variables=A.variables, sigma=A.sigma, delta=A.delta,
        cross=A.cross, notes=A.notes, central=z,
    )


# ============================================================
# Graded conditions
# ============================================================

def _homogeneous_of(c: RElement, degree: int, allow_zero: bool) -> bool:
    if c.is_zero():
        return allow_zero
    return c.poly.is_homogeneous() and c.deg == degree


def verify_graded_conditions(H: ExtensionPresentation) -> VerdictReport:
    """
    Graded skew PBW conditions located per generator and per cross relation:
    sigma images homogeneous of degree 1, delta images of degree 2,
    d in R_0, r0 in R_2, r_l in R_1, homogeneous base rules
    """
    R = H.base
    report = VerdictReport(title=f'graded conditions: {H.name}')
    for rule in R.rules:
        ok = rule.rhs.is_zero() or (rule.rhs.is_homogeneous() and rule.rhs.degree == len(rule.lhs))
        report.add(f'rule {rule.format(R.order)} homogeneous', ok)
    central = getattr(H, 'central', None) or getattr(R, 'central', None)
    if central is not None:
        missing = [g for g in R.generators if g != central
                   and Rule((g, central), FreePoly.monomial(R.alphabet, (central, g))) not in R.rules]
        report.add(f'{central} central in the base', not missing, ', '.join(missing) or None)
    for k, (s, d) in enumerate(zip(H.sigma, H.delta), start=1):
        for g, img in s.images:
            report.add(f'sigma_{k}({g}) homogeneous of degree 1', _homogeneous_of(img, 1, False),
                       None if _homogeneous_of(img, 1, False) else img.format(R.order))
        for g, img in d.images:
            ok = _homogeneous_of(img, 2, True)
            report.add(f'delta_{k}({g}) homogeneous of degree 2', ok, None if ok else img.format(R.order))
    for c in H.cross:
        label = f'{H.variables[c.j]}*{H.variables[c.i]}'
        report.add(f'{label}: d in R_0', _homogeneous_of(c.d, 0, False), None)
        report.add(f'{label}: r0 in R_2', _homogeneous_of(c.r0, 2, True),
                   None if _homogeneous_of(c.r0, 2, True) else c.r0.format(R.order))
        for l, r_l in enumerate(c.r):
            ok = _homogeneous_of(r_l, 1, True)
            report.add(f'{label}: r_{H.variables[l]} in R_1', ok, None if ok else r_l.format(R.order))
    logger.info(f"GRADED | {H.name} | {'pass' if report.passed else 'fail'}")
    return report


# ============================================================
# Specialization and G(A)
# ============================================================

def _substitute(c: RElement, z: str, value: int, target: RingPresentation) -> RElement:
    return reduce(c.poly.substitute_scalar(z, value, target.alphabet), target)


def specialize_ring(HR: RingPresentation, z: str, value: int) -> RingPresentation:
    """Drop the centrality rules and substitute z -> value in the remaining rules"""
    if value not in (0, 1):
        raise DomainError(f"Only z -> 0 and z -> 1 are supported, got {value!r}")
    generators = tuple(g for g in HR.generators if g != z)
    alphabet = frozenset(generators)
    centrality = set(_centrality_rules(generators, z, HR.alphabet))
    rules = tuple(
        Rule(rule.lhs, rule.rhs.substitute_scalar(z, value, alphabet))
        for rule in HR.rules if rule not in centrality
    )
    suffix = '(z-1)' if value == 1 else '(z)'
    return RingPresentation(f'{HR.name}/{suffix}', generators, rules, HR.parameters)


def specialize(H: GradedExtensionPresentation, value: int) -> ExtensionPresentation:
    """
    H(A)/(z - 1) reproduces A; H(A)/(z) is G(A)
    """
    z = H.central
    if z is None:
        raise StructuralError(f"{H.name!r} has no central homogenizing variable")
    R = specialize_ring(H.base, z, value)

    def sub(c: RElement) -> RElement:
        return _substitute(c, z, value, R)

    def table(images) -> dict:
        return {g: sub(img) for g, img in images if g != z}

    sigmas, deltas = [], []
    for s, d in zip(H.sigma, H.delta):
        inverse = table(s.inverse_images) if s.inverse_images is not None else None
        sigma = EndoSpec.from_maps(table(s.images), inverse)
        sigmas.append(sigma)
        deltas.append(DerivSpec.from_maps(table(d.images), sigma))
    cross = [CrossRelation(c.j, c.i, sub(c.d), sub(c.r0), tuple(sub(r) for r in c.r)) for c in H.cross]
    name = f'{H.name}|{z}={value}'
    logger.info(f"SPECIALIZE | {H.name} | {z} -> {value}")
    return build_extension(name, R, H.variables, sigmas, deltas, cross, H.notes)


def _component(c: RElement, degree: int, R: RingPresentation) -> RElement:
    return reduce(c.poly.component(degree).with_alphabet(R.alphabet), R)


def gr_presentation(A: ExtensionPresentation, require_graded_sigma: bool = True) -> ExtensionPresentation:
    """
    G(A) over G(R)

    Keeps the degree-2 part of delta_i(t_k) and r0_ji, the degree-1 part of
    r_lji; base relations are replaced by their leading homogeneous parts.
    With require_graded_sigma=False a non-graded sigma_i keeps its degree-1 part.
    """
    if not check_sigma_filtered(A).passed:
        raise ContractError(f"{A.name!r} is not sigma-filtered; G(A) is not a graded skew PBW extension")
    for k, s in enumerate(A.sigma, start=1):
        graded = all(img.poly.is_homogeneous() and img.deg == 1 for _, img in s.images)
        if not graded and require_graded_sigma:
            raise ContractError(
                f"sigma_{k} of {A.name!r} is not graded; pass require_graded_sigma=False to keep its degree-1 part"
            )
    # Leading homogeneous parts of the base relations
    base = A.base
    R = RingPresentation(
        f'G({base.name})', base.generators,
        tuple(Rule(rule.lhs, rule.rhs.component(len(rule.lhs))) for rule in base.rules),
        base.parameters,
    )

    def table(images, degree) -> dict:
        return {g: _component(img, degree, R) for g, img in images}

    # Keep the top-degree components of sigma, delta and the cross relations
    sigmas, deltas = [], []
    for s, d in zip(A.sigma, A.delta):
        inverse = table(s.inverse_images, 1) if s.inverse_images is not None else None
        sigma = EndoSpec.from_maps(table(s.images, 1), inverse)
        sigmas.append(sigma)
        deltas.append(DerivSpec.from_maps(table(d.images, 2), sigma))
    cross = [
        CrossRelation(c.j, c.i, _component(c.d, 0, R), _component(c.r0, 2, R),
                      tuple(_component(r, 1, R) for r in c.r))
        for c in A.cross
    ]
    return build_extension(f'G({A.name})', R, A.variables, sigmas, deltas, cross, A.notes)


# ============================================================
# Canonical relation sets
# ============================================================

def canonical_relation(f: FreePoly, order: Mapping[str, int], central: Optional[str] = None) -> FreePoly:
    """Scale monic on the deglex-leading word, central letter moved to the front"""
    if central is not None and central in f.alphabet:
        f = central_normal_form(f, central)
    if f.is_zero():
        return f
    leading = max(f.words(), key=lambda w: deglex_key(w, order))
    return f.scale(1 / f.coefficient(leading))


def canonical_relations(P: Union[RingPresentation, ExtensionPresentation],
                        central: Optional[str] = None) -> FrozenSet[FreePoly]:
    """Defining relations of P as a set of monic polynomials over all its generators"""
    if isinstance(P, ExtensionPresentation):
        central = central or getattr(P, 'central', None)
        P = full_presentation(P)
    central = central or getattr(P, 'central', None)
    return frozenset(canonical_relation(rule.relation(), P.order, central) for rule in P.rules)
