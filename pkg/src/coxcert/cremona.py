"""Standard Cremona moves on configurations, walks, and verdicts.

The coordinate inversion on the simplex spanned by r chosen points is the
only birational move the verdict logic ever needs.  A walk applies such
moves repeatedly and checks a position invariant after every step; which
invariant depends on what the starting configuration is, so the walk
first classifies its input:

  lgp      the points are in linear general position; every move is legal
           and the image must stay in linear general position
  pencil   nine plane points forming the reduced base locus of a cubic
           pencil; moves that hit the contraction locus are skipped, and
           legal moves must preserve the locus property and the rank count
  net      eight space points forming the reduced base locus of a quadric
           net, handled like the pencil tier
  rejected neither of the above; the walk fails before the first step

Rank preservation in the pencil and net tiers is a theorem, not a
heuristic, so a violation after a legal move raises ConsistencyError
rather than producing a failed walk.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .fields import Field, FieldError
from .forms import cubic_pencil, quadric_net
from .intersect import (
    ConsistencyError,
    PositiveDimensionalError,
    UndeterminedError,
    base_locus,
    transversality_check,
)
from .linalg import Matrix
from .polys import MPoly
from .points import (
    ConfigError,
    PointConfig,
    collinear_triples,
    config_equivalent,
    dependent_subsets,
    dualize,
    is_lgp,
    net_rank_report,
    pencil_rank_report,
    triple_partitions,
)
from .serialize import element_to_json


class CremonaStepError(Exception):
    """A requested move is undefined on this configuration."""

    def __init__(self, message, subset=None, point=None):
        super().__init__(message)
        self.subset = subset
        self.point = point


@dataclass(frozen=True)
class CremonaStep:
    subset: tuple
    transform: Matrix

    def to_json_dict(self) -> dict:
        return {
            "subset": list(self.subset),
            "transform": [
                [element_to_json(c) for c in row] for row in self.transform.rows
            ],
        }


def _cremona_step(config: PointConfig, subset):
    r, n = config.r, config.n
    idx = tuple(int(i) for i in subset)
    if len(idx) != r or len(set(idx)) != r or not all(0 <= i < n for i in idx):
        raise ConfigError(f"need {r} distinct point indices in range, got {subset!r}")
    f = config.field
    chosen = Matrix(f, [[config.points[i][t] for i in idx] for t in range(r)])
    try:
        T = chosen.inverse()
    except ValueError:
        raise CremonaStepError("chosen points are linearly dependent", subset=idx)
    rest = [j for j in range(n) if j not in idx]
    rows = [None] * n
    for slot, i in enumerate(idx):
        rows[i] = tuple(f.one if t == slot else f.zero for t in range(r))
    for j in rest:
        y = T * list(config.points[j])
        for t, c in enumerate(y):
            if c.is_zero:
                raise CremonaStepError(
                    f"point {j} lies on the hyperplane spanned by the chosen "
                    f"points other than {idx[t]}: it would be contracted",
                    subset=idx,
                    point=j,
                )
        total = f.one
        for c in y:
            total = total * c
        rows[j] = tuple(total / y[t] for t in range(r))
    try:
        image = PointConfig.build(f, rows)
    except ConfigError as exc:
        # inversion is injective off the contraction locus, so this cannot
        # happen for a well-formed input
        raise ConsistencyError(f"move produced a degenerate image: {exc}")
    return image, CremonaStep(subset=idx, transform=T)


def standard_cremona(config: PointConfig, subset) -> PointConfig:
    """Invert coordinates with respect to the simplex of r chosen points.

    The chosen points land on the coordinate simplex (same positions), and
    every other point maps through x_t -> prod(x_s for s != t).  Raises
    CremonaStepError if the chosen points are dependent or any unchosen
    point would be contracted.
    """
    image, _ = _cremona_step(config, subset)
    return image


# ---------------------------------------------------------------------------
# base-locus verification

_REDUCTION_PRIMES = (29, 31, 37, 41, 43, 47, 53)


def _reduce_form(form, fp):
    # coefficientwise reduction; FieldError when p divides a denominator
    return MPoly(fp, form.nvars, [(e, fp(c.val)) for e, c in form.terms.items()])


def _locus_matches(report, config) -> bool:
    if not report.complete:
        return False
    if report.degree_partition != ((1, report.expected),):
        return False
    return {p for p, _ in report.points} == config.point_set()


@dataclass(frozen=True)
class _LocusCheck:
    ok: bool
    reason: str | None
    details: dict
    decisive: bool      # False when the engine gave up rather than refuted


def _verify_locus(config: PointConfig, forms, expected: int) -> _LocusCheck:
    """Is the configuration exactly the reduced base locus of its system?

    Over a finite field the locus is decomposed directly.  Over the
    rationals the forms and points are reduced at a prime of good
    reduction: a zero-dimensional fiber bounds the generic fiber dimension,
    and the Bezout count then pins every multiplicity to one.
    """
    if config.field.is_finite:
        try:
            report = base_locus(forms, expected=expected)
        except UndeterminedError as exc:
            return _LocusCheck(False, f"base locus did not resolve: {exc}", {}, False)
        except PositiveDimensionalError as exc:
            return _LocusCheck(
                False, f"the system has a positive-dimensional part: {exc}",
                {}, exc.proven,
            )
        if not _locus_matches(report, config):
            return _LocusCheck(False, (
                "base locus is not exactly the configuration "
                f"(weighted count {report.weighted} of {expected})"
            ), {}, True)
        if not transversality_check(forms, report):
            raise ConsistencyError(
                "reduced complete locus failed the transversality cross-check"
            )
        return _LocusCheck(True, None, {}, True)
    for p in _REDUCTION_PRIMES:
        fp = Field.prime(p)
        try:
            red_forms = [_reduce_form(f, fp) for f in forms]
            red = PointConfig.build(
                fp, [[fp(c.val) for c in pt] for pt in config.points]
            )
        except (FieldError, ConfigError):
            continue  # denominator or collision at this prime
        try:
            report = base_locus(red_forms, expected=expected)
        except (UndeterminedError, PositiveDimensionalError):
            continue
        if not _locus_matches(report, red):
            continue
        if not transversality_check(red_forms, report):
            raise ConsistencyError(
                "reduced complete locus failed the transversality cross-check"
            )
        return _LocusCheck(True, None, {"reduction_prime": p}, True)
    return _LocusCheck(False, (
        "no prime in the reduction list certifies a reduced zero-dimensional "
        "locus equal to the configuration"
    ), {}, False)


def _verify_once(config: PointConfig, system_fn, expected: int) -> _LocusCheck:
    try:
        forms = system_fn(config)
    except ConfigError as exc:
        return _LocusCheck(False, str(exc), {}, True)
    return _verify_locus(config, list(forms), expected)


_REFRAME_ATTEMPTS = 8


def _random_element(field, rng):
    if not field.is_finite:
        return field(rng.randrange(-9, 10))
    if field.degree == 1:
        return field(rng.randrange(field.p))
    return field(tuple(rng.randrange(field.p) for _ in range(field.degree)))


def _reframed(config: PointConfig, rng) -> PointConfig:
    f = config.field
    while True:
        g = Matrix(
            f,
            [[_random_element(f, rng) for _ in range(config.r)]
             for _ in range(config.r)],
        )
        try:
            g.inverse()
        except ValueError:
            continue
        return PointConfig.build(f, [g * list(p) for p in config.points])


def _verify_reframing(config: PointConfig, system_fn, expected: int) -> _LocusCheck:
    """Locus verification with frame retries.

    The projection engine can run out of usable charts in an unlucky
    coordinate frame over a small field.  The locus property itself is
    frame-invariant, so an indecisive answer is retried on a few
    deterministic random frames; a decisive answer in any frame settles the
    original question.
    """
    check = _verify_once(config, system_fn, expected)
    if check.ok or check.decisive or not config.field.is_finite:
        return check
    f = config.field
    rng = random.Random(((f.p * 64 + f.degree) * 64 + config.n) * 64 + expected)
    for _ in range(_REFRAME_ATTEMPTS):
        again = _verify_once(_reframed(config, rng), system_fn, expected)
        if again.ok or again.decisive:
            return again
    return check


def _verify_cubic_locus(config: PointConfig) -> _LocusCheck:
    return _verify_reframing(config, cubic_pencil, 9)


def _verify_net_locus(config: PointConfig) -> _LocusCheck:
    return _verify_reframing(config, quadric_net, 8)


# ---------------------------------------------------------------------------
# walks

@dataclass(frozen=True)
class WalkResult:
    survived: bool
    tier: str                 # lgp | pencil | net | rejected
    depth: int                # levels completed, or the level that failed
    log: tuple                # steps along the reported path
    failure_witness: dict | None
    classes: int              # distinct configurations encountered
    skipped: int              # moves refused by the contraction check
    rho: int | None           # rank certificate guarded during the walk
    rho_checked: bool
    stuck: bool = False       # random walk ran out of legal moves early

    def to_json_dict(self) -> dict:
        return {
            "survived": self.survived,
            "tier": self.tier,
            "depth": self.depth,
            "classes": self.classes,
            "skipped": self.skipped,
            "rho": self.rho,
            "rho_checked": self.rho_checked,
            "stuck": self.stuck,
            "log": [s.to_json_dict() for s in self.log],
            "failure_witness": self.failure_witness,
        }


def _guarded_report(report_fn, config):
    # the incidence count must go through on a verified locus
    try:
        report = report_fn(config)
    except ConfigError as exc:
        raise ConsistencyError(
            f"verified locus failed the incidence count: {exc}"
        )
    if report.rho < 0:
        raise ConsistencyError(f"negative rank {report.rho} on a verified locus")
    return report


def _walk_tier(config: PointConfig):
    ok, witness = is_lgp(config)
    if ok:
        return "lgp", None, None
    reasons = []
    if (config.r, config.n) == (3, 9):
        check = _verify_cubic_locus(config)
        if check.ok:
            return "pencil", _guarded_report(pencil_rank_report, config).rho, None
        reasons.append(check.reason)
    if (config.r, config.n) == (4, 8):
        check = _verify_net_locus(config)
        if check.ok:
            return "net", _guarded_report(net_rank_report, config).rho, None
        reasons.append(check.reason)
    detail = {
        "reason": "not in linear general position and not a reduced pencil "
        "or net base locus",
        "dependent_points": list(witness),
    }
    if reasons:
        detail["locus_failure"] = reasons[0]
    return "rejected", None, detail


def _check_image(tier: str, rho0, image: PointConfig):
    """None if the image keeps the tier invariant, else a witness dict.

    Tier invariants backed by a theorem raise ConsistencyError instead of
    returning a witness.
    """
    if tier == "lgp":
        ok, witness = is_lgp(image)
        if ok:
            return None
        return {
            "reason": "image left linear general position",
            "dependent_points": list(witness),
        }
    if tier == "pencil":
        check = _verify_cubic_locus(image)
        report_fn = pencil_rank_report
    else:
        check = _verify_net_locus(image)
        report_fn = net_rank_report
    if not check.ok:
        if check.decisive:
            raise ConsistencyError(
                f"legal move broke the {tier} locus: {check.reason}"
            )
        raise UndeterminedError(
            f"could not verify the image locus after a legal move: {check.reason}"
        )
    got = _guarded_report(report_fn, image).rho
    if got != rho0:
        raise ConsistencyError(
            f"rank certificate changed under a legal move: {rho0} -> {got}"
        )
    return None


def _class_fingerprint(config: PointConfig):
    deps = dependent_subsets(config, config.r)
    counts = [0] * config.n
    for s in deps:
        for i in s:
            counts[i] += 1
    f = config.field
    return (f.kind, f.p, f.degree, config.r, config.n, len(deps), tuple(sorted(counts)))


class _ClassRegistry:
    """Dedup by incidence fingerprint, then by projective equivalence."""

    def __init__(self):
        self.buckets = {}
        self.count = 0

    def add(self, config) -> bool:
        bucket = self.buckets.setdefault(_class_fingerprint(config), [])
        for old in bucket:
            if old.point_set() == config.point_set():
                return False
            if config_equivalent(old, config) is not None:
                return False
        bucket.append(config)
        self.count += 1
        return True


def cremona_walk(config: PointConfig, depth: int, strategy: str = "exhaustive",
                 seed: int = 0) -> WalkResult:
    """Bounded-depth stability search.  Survival is evidence, not proof.

    exhaustive: try every r-subset from every configuration class reached,
    deduplicating classes, for `depth` levels.  random: one path of `depth`
    moves, choosing uniformly (per `seed`) among subsets and taking the
    first legal one each time.

    In the pencil and net tiers a proven invariant violation raises
    ConsistencyError and an image the engine cannot verify either way
    raises UndeterminedError; neither is a failed walk.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    tier, rho0, witness = _walk_tier(config)
    rho_checked = tier in ("pencil", "net")
    if tier == "rejected":
        return WalkResult(
            survived=False, tier=tier, depth=0, log=(), failure_witness=witness,
            classes=1, skipped=0, rho=None, rho_checked=False,
        )
    subsets = list(itertools.combinations(range(config.n), config.r))
    if strategy == "exhaustive":
        registry = _ClassRegistry()
        registry.add(config)
        frontier = [(config, ())]
        skipped = 0
        for level in range(depth):
            grown = []
            for current, path in frontier:
                for sub in subsets:
                    try:
                        image, step = _cremona_step(current, sub)
                    except CremonaStepError:
                        skipped += 1
                        continue
                    witness = _check_image(tier, rho0, image)
                    if witness is not None:
                        return WalkResult(
                            survived=False, tier=tier, depth=level + 1,
                            log=path + (step,), failure_witness=witness,
                            classes=registry.count, skipped=skipped,
                            rho=rho0, rho_checked=rho_checked,
                        )
                    if registry.add(image):
                        grown.append((image, path + (step,)))
            frontier = grown
            if not frontier:
                break
        return WalkResult(
            survived=True, tier=tier, depth=depth, log=(), failure_witness=None,
            classes=registry.count, skipped=skipped, rho=rho0,
            rho_checked=rho_checked,
        )
    if strategy == "random":
        rng = random.Random(seed)
        current = config
        log = []
        skipped = 0
        stuck = False
        for _ in range(depth):
            moved = False
            for sub in rng.sample(subsets, len(subsets)):
                try:
                    image, step = _cremona_step(current, sub)
                except CremonaStepError:
                    skipped += 1
                    continue
                witness = _check_image(tier, rho0, image)
                if witness is not None:
                    return WalkResult(
                        survived=False, tier=tier, depth=len(log) + 1,
                        log=tuple(log) + (step,), failure_witness=witness,
                        classes=len(log) + 2, skipped=skipped,
                        rho=rho0, rho_checked=rho_checked,
                    )
                log.append(step)
                current = image
                moved = True
                break
            if not moved:
                stuck = True
                break
        return WalkResult(
            survived=True, tier=tier, depth=len(log), log=tuple(log),
            failure_witness=None, classes=len(log) + 1, skipped=skipped,
            rho=rho0, rho_checked=rho_checked, stuck=stuck,
        )
    raise ValueError(f"unknown strategy {strategy!r}")


# ---------------------------------------------------------------------------
# verdicts

@dataclass(frozen=True)
class Verdict:
    status: str               # infinite_generation | finite_generation | undetermined
    rho: int | None
    a: int | None
    b: int | None
    certificate: dict
    citations: tuple

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "rho": self.rho,
            "a": self.a,
            "b": self.b,
            "certificate": self.certificate,
            "citations": list(self.citations),
        }


_PENCIL_ROUTE = "route:rank-formula-pencil"
_NET_ROUTE = "route:rank-formula-net"
_DUAL_ROUTE = "route:dual-configuration"


def analyze_cubic_config(config: PointConfig) -> Verdict:
    """Verdict for nine plane points via the pencil rank count.

    The points must be the reduced base locus of the cubic pencil through
    them; anything else is an undetermined verdict, not an error.  With the
    locus verified, rank > 0 certifies infinite generation and rank 0
    certifies finite generation.
    """
    if (config.r, config.n) != (3, 9):
        raise ConfigError("expected nine points in the plane")
    check = _verify_cubic_locus(config)
    if not check.ok:
        return Verdict(
            "undetermined", None, None, None,
            {"route": "rank-formula-pencil", "reason": check.reason},
            (_PENCIL_ROUTE,),
        )
    report = _guarded_report(pencil_rank_report, config)
    certificate = {
        "route": "rank-formula-pencil",
        "collinear_triples": [list(t) for t in collinear_triples(config)],
        "triple_partitions": [
            [list(t) for t in part] for part in triple_partitions(config)
        ],
    }
    certificate.update(check.details)
    if report.a == 0:
        certificate["stable_under_all_moves"] = True
    if report.rho > 0:
        status = "infinite_generation"
    else:
        status = "finite_generation"
        certificate["converse"] = "unconditional for nine-point pencils"
    return Verdict(status, report.rho, report.a, report.b, certificate,
                   (_PENCIL_ROUTE,))


def analyze_quadric_config(config: PointConfig) -> Verdict:
    """Verdict for eight space points via the net rank count.

    Rank 0 here leans on the strengthened converse for nets, and the
    certificate says so; rank > 0 is unconditional.
    """
    if (config.r, config.n) != (4, 8):
        raise ConfigError("expected eight points in space")
    check = _verify_net_locus(config)
    if not check.ok:
        return Verdict(
            "undetermined", None, None, None,
            {"route": "rank-formula-net", "reason": check.reason},
            (_NET_ROUTE,),
        )
    report = _guarded_report(net_rank_report, config)
    certificate = {
        "route": "rank-formula-net",
        "coplanar_quadruples": [
            list(q) for q in dependent_subsets(config, 4)
        ],
    }
    certificate.update(check.details)
    if report.a == 0:
        certificate["stable_under_all_moves"] = True
    if report.rho > 0:
        status = "infinite_generation"
    else:
        status = "finite_generation"
        certificate["converse"] = (
            "conditional: rank zero gives finite generation for nets only "
            "through the strengthened converse"
        )
    return Verdict(status, report.rho, report.a, None, certificate, (_NET_ROUTE,))


def certify_dual(config: PointConfig) -> Verdict:
    """Certificate in the five-dimensional ambient space by dualizing.

    Requires nine plane points forming a reduced pencil base locus with no
    collinear triple.  The dual nine points then admit every move without
    degenerating, which certifies infinite generation for the rank-3
    vector group acting on the 18-dimensional doubled space.
    """
    if (config.r, config.n) != (3, 9):
        raise ConfigError("expected nine points in the plane")
    check = _verify_cubic_locus(config)
    if not check.ok:
        raise ConfigError(f"not a reduced pencil base locus: {check.reason}")
    triples = collinear_triples(config)
    if triples:
        raise ConfigError(
            f"{len(triples)} collinear triples present; "
            "the dual certificate needs none"
        )
    dual = dualize(config)
    ok, witness = is_lgp(dual)
    if not ok:
        raise ConsistencyError(
            f"dual of a collinearity-free locus is degenerate at {witness}"
        )
    certificate = {
        "route": "dual-configuration",
        "dual_points": [[element_to_json(c) for c in p] for p in dual.points],
        "dual_ambient_dim": dual.r - 1,
        "index_note": "dual point j pairs with input point j; the classical "
        "statement lists the partners in reversed index order",
        "group_rank": dual.n - dual.r,
        "representation_dimension": 2 * dual.n,
    }
    certificate.update(check.details)
    return Verdict("infinite_generation", 8, 0, 0, certificate, (_DUAL_ROUTE,))
