"""Contract-checked replay of the nonexistence argument for ``z^2 = x^4 + 10x^2y^2 + 9y^4``.

Each step of the argument is a separately callable function returning a
``ProofStep`` whose identity has been re-verified numerically; the branch
operations compose them into a ``DescentTrace``. A failing check raises
``ContractError`` carrying the step name, so a counterexample would point
at the exact step that breaks.

The composed preconditions are unsatisfiable, so on real data the branch
operations only run inside ``vacuity_scan``; the individual steps are
exercised on solvable instances by the test suite.
"""

import logging

from .errors import ConsistencyError, ContractError, DecompositionError, ParameterError, PreconditionError
from .exact import gcd
from .model import (
    LIFTED_FORM,
    ODD_BRANCH_FORM,
    THEOREM_FORM,
    CaseSplit,
    ClaimCheck,
    DescentTrace,
    ProofStep,
    QuarticForm,
    SearchOptions,
    Solution,
)
from .parametrize import ParityCase, conic_decompose, four_split, pythagorean_decompose
from .quartic import eval_form, search

logger = logging.getLogger(__name__)


def _require(condition: bool, step: str, detail: str) -> None:
    if not condition:
        raise ContractError(step, detail)


def normalize(f: QuarticForm, s: Solution) -> Solution:
    """
    Divide a solution by ``d = gcd(x, y)``, returning ``(x/d, y/d, z/d^2)``.

    Raises
    ------
    ConsistencyError
        If ``d^2`` does not divide ``z``.
    PreconditionError
        If ``z^2 != f(x, y)``.

    Examples
    --------
    >>> normalize(LIFTED_FORM, Solution.of(3, 0, 9)).key()
    (1, 0, 1)
    """
    d = gcd(s.x, s.y)
    if d <= 1:
        if s.z * s.z != eval_form(f, s.x, s.y):
            raise PreconditionError(f"({s.x}, {s.y}, {s.z}) does not satisfy z^2 = form(x, y) for ({f})")
        return s
    if s.z % (d * d):
        raise ConsistencyError(f"z = {s.z} is not divisible by d^2 = {d * d}")
    if s.z * s.z != eval_form(f, s.x, s.y):
        raise PreconditionError(f"({s.x}, {s.y}, {s.z}) does not satisfy z^2 = form(x, y) for ({f})")
    reduced = Solution.of(s.x // d, s.y // d, s.z // (d * d))
    logger.debug(f"Normalized ({s.x}, {s.y}, {s.z}) by d = {d} to {reduced.key()}")
    return reduced


def lift_polynomial_identity(alpha: int, beta: int) -> bool:
    """Check ``P^2 + 10 P (ab)^2 + 9 (ab)^4 == (4a^4 - b^4)^2`` with ``P = 4a^4 - 5a^2b^2 + b^4``."""
    value = eval_form(THEOREM_FORM, alpha, beta)
    product = alpha * beta
    return value * value + 10 * value * product * product + 9 * product**4 == (4 * alpha**4 - beta**4) ** 2


def lift_to_1_10_9(alpha: int, beta: int, gamma: int) -> Solution:
    """
    Map a solution of ``k^2 = 4t^4 - 5t^2s^2 + s^4`` to one of ``z^2 = x^4 + 10x^2y^2 + 9y^4``.

    Parameters
    ----------
    alpha, beta, gamma : int
        A solution ``gamma^2 = 4 alpha^4 - 5 alpha^2 beta^2 + beta^4``.

    Returns
    -------
    Solution
        ``(gamma, alpha * beta, |4 alpha^4 - beta^4|)``.

    Raises
    ------
    ContractError
        If the input is not a solution, or the image fails the lifted form.

    Examples
    --------
    >>> lift_to_1_10_9(1, 2, 0).key()
    (0, 2, 12)
    """
    _require(
        gamma * gamma == eval_form(THEOREM_FORM, alpha, beta),
        "theorem-lift",
        f"({alpha}, {beta}, {gamma}) does not satisfy k^2 = 4t^4 - 5t^2s^2 + s^4",
    )
    x, y, z = gamma, alpha * beta, abs(4 * alpha**4 - beta**4)
    _require(z * z == eval_form(LIFTED_FORM, x, y), "theorem-lift", f"image ({x}, {y}, {z}) is off the lifted form")
    return Solution.of(x, y, z)


def case_split(x: int, y: int) -> CaseSplit:
    """
    Decide which coordinate of a coprime pair 3 divides.

    Returns ``MOD3_CONTRADICTION`` when neither does: the lifted form is then
    congruent to 2 modulo 3 and cannot be a square.

    Raises
    ------
    PreconditionError
        If ``gcd(x, y) != 1``.
    """
    if gcd(x, y) != 1:
        raise PreconditionError(f"case split needs a coprime pair, got gcd({x}, {y}) = {gcd(x, y)}")
    if y % 3 == 0:
        return CaseSplit.DIV_Y_BY_3
    if x % 3 == 0:
        return CaseSplit.DIV_X_BY_3
    return CaseSplit.MOD3_CONTRADICTION


def _require_case1_pair(x: int, y: int) -> None:
    if gcd(x, y) != 1:
        raise PreconditionError(f"need gcd(x, y) = 1, got gcd({x}, {y}) = {gcd(x, y)}")
    if y % 3:
        raise PreconditionError(f"need 3 | y, got y = {y}")
    if (x - y) % 2 == 0:
        raise PreconditionError(f"need exactly one of x = {x}, y = {y} even")


def coprimality_claim_check(x: int, y: int) -> ClaimCheck:
    """
    Replay the proof that ``gcd(x^2 - 3y^2, 4xy) = 1``.

    Parameters
    ----------
    x, y : int
        Coprime, ``3 | y`` and of opposite parity.

    Returns
    -------
    ClaimCheck
        The gcd (always 1) and one log line per eliminated prime.

    Raises
    ------
    PreconditionError
        If the pair is outside the claim's domain (e.g. both odd).
    ContractError
        If an elimination step or the final gcd fails.

    Examples
    --------
    >>> coprimality_claim_check(2, 3).gcd
    1
    """
    _require_case1_pair(x, y)
    u, v = x * x - 3 * y * y, 4 * x * y
    log: list[str] = []

    common = gcd(u, x * y)
    while common and common % 2 == 0:
        common //= 2
    while common and common % 3 == 0:
        common //= 3
    _require(common == 1, "claim-odd-primes", f"a prime p > 3 divides both {u} and {x * y}")
    log.append(f"p > 3: gcd(x^2 - 3y^2, xy) has no prime factor above 3 for ({x}, {y})")

    _require(u % 3 != 0, "claim-prime-3", f"3 divides x^2 - 3y^2 = {u} although 3 does not divide x = {x}")
    log.append(f"p = 3: x^2 - 3y^2 = {u} is {u % 3} mod 3")

    _require(u % 4 == 1, "claim-prime-2", f"x^2 - 3y^2 = {u} is {u % 4} mod 4, expected 1")
    log.append(f"p = 2: squares are 0 or 1 mod 4, so x^2 - 3y^2 = {u} is 1 mod 4 and odd")

    g = gcd(u, v)
    _require(g == 1, "claim-coprimality", f"gcd({u}, {v}) = {g}")
    log.append(f"gcd({u}, {v}) = 1")
    for line in log:
        logger.debug(line)
    return ClaimCheck(gcd=g, log=log)


def case2_scaling_identity(x1: int, y: int) -> bool:
    """Check ``form(3 x1, y) == 9 form(y, x1)`` for the lifted form."""
    return eval_form(LIFTED_FORM, 3 * x1, y) == 9 * eval_form(LIFTED_FORM, y, x1)


def reduce_case2(x: int, y: int, z: int) -> Solution:
    """
    Reduce a solution with ``3 | x`` to ``(y, x / 3, z / 3)``, a solution of the same form.

    Raises
    ------
    PreconditionError
        If 3 does not divide ``x``.
    ContractError
        If ``(x, y, z)`` is not a solution or ``9`` does not divide ``z^2``.
    """
    if x % 3:
        raise PreconditionError(f"case 2 needs 3 | x, got x = {x}")
    _require(
        z * z == eval_form(LIFTED_FORM, x, y),
        "case2-scaling",
        f"({x}, {y}, {z}) does not satisfy z^2 = x^4 + 10x^2y^2 + 9y^4",
    )
    _require(z % 3 == 0, "case2-scaling", f"9 does not divide z^2 = {z * z}")
    reduced = Solution.of(y, x // 3, z // 3)
    _require(
        reduced.z * reduced.z == eval_form(LIFTED_FORM, reduced.x, reduced.y),
        "case2-scaling",
        f"reduced triple {reduced.key()} is off the form",
    )
    return reduced


def _require_branch_input(x: int, y: int, z: int, x_even: bool) -> tuple[int, int, int]:
    if x * y * z == 0:
        raise PreconditionError(f"branch input ({x}, {y}, {z}) must be nonzero")
    x, y, z = abs(x), abs(y), abs(z)
    if z * z != eval_form(LIFTED_FORM, x, y):
        raise PreconditionError(f"({x}, {y}, {z}) does not satisfy z^2 = x^4 + 10x^2y^2 + 9y^4")
    _require_case1_pair(x, y)
    if (x % 2 == 0) != x_even:
        raise PreconditionError(f"branch needs x {'even' if x_even else 'odd'}, got x = {x}")
    return x, y, z


# Individual proof steps. Each returns the step record; failures raise ContractError.


def pythagorean_step(x: int, y: int, z: int) -> ProofStep:
    """
    Write ``z^2 = (x^2 - 3y^2)^2 + (4xy)^2`` with ``x^2 - 3y^2 = m^2 - n^2`` and ``4xy = 2mn``.

    ``x^2 - 3y^2`` may be negative; the generators are then swapped so the
    equalities hold with signs.
    """
    step = "pythagorean-decomposition"
    u, v = x * x - 3 * y * y, 4 * x * y
    _require(u * u + v * v == z * z, step, f"(x^2 - 3y^2)^2 + (4xy)^2 = {u * u + v * v} differs from z^2 = {z * z}")
    try:
        triple = pythagorean_decompose(abs(u), v, z)
    except (DecompositionError, ParameterError) as e:
        raise ContractError(step, str(e)) from e
    m, n = (triple.gen_m, triple.gen_n) if u > 0 else (triple.gen_n, triple.gen_m)
    _require(m * m - n * n == u and 2 * m * n == v and m * m + n * n == z, step, f"generators ({m}, {n}) do not fit")
    return ProofStep(name=step, values={"m": m, "n": n})


def generator_parity_step(m: int, n: int) -> ProofStep:
    """Check ``m`` odd, ``n`` even, and set ``n1 = n / 2``."""
    step = "parity-m-odd-n-even"
    _require(m % 2 == 1 and n % 2 == 0, step, f"(m, n) = ({m}, {n}) is not (odd, even)")
    return ProofStep(name=step, values={"n1": n // 2})


def four_split_step(x: int, y: int, m: int, n1: int) -> ProofStep:
    """Factor ``xy = m n1`` as ``x = ac, y = bd, m = ad, n1 = bc`` with pairwise coprime factors."""
    step = "four-split"
    try:
        split = four_split(x, y, m, n1)
    except ParameterError as e:
        raise ContractError(step, str(e)) from e
    _require(split.pairwise_coprime(), step, f"{split} is not pairwise coprime")
    return ProofStep(name=step, values={"a": split.a, "b": split.b, "c": split.c, "d": split.d})


def abd_odd_step(a: int, b: int, d: int) -> ProofStep:
    """``y = bd`` and ``m = ad`` odd force ``a, b, d`` odd."""
    step = "parity-a-b-d-odd"
    _require(a % 2 == 1 and b % 2 == 1 and d % 2 == 1, step, f"(a, b, d) = ({a}, {b}, {d}) not all odd")
    return ProofStep(name=step, values={})


def a_even_step(a: int) -> ProofStep:
    """The stated consequence of ``x`` even: ``a`` even."""
    step = "parity-a-even"
    # a is odd after parity-a-b-d-odd, so on a genuine input this step raises
    _require(a % 2 == 0, step, f"a = {a} is odd although x = ac is even")
    return ProofStep(name=step, values={})


def acd_odd_b_even_step(a: int, b: int, c: int, d: int) -> ProofStep:
    """``x = ac`` and ``m = ad`` odd force ``a, c, d`` odd; ``y = bd`` even forces ``b`` even."""
    step = "parity-a-c-d-odd-b-even"
    _require(
        a % 2 == 1 and c % 2 == 1 and d % 2 == 1 and b % 2 == 0,
        step,
        f"(a, b, c, d) = ({a}, {b}, {c}, {d}) violates the parity pattern",
    )
    return ProofStep(name=step, values={})


def quotient_equation_step(a: int, b: int, c: int, d: int) -> ProofStep:
    """Check ``(a^2 + 4b^2) c^2 == (a^2 + 3b^2) d^2``."""
    step = "quotient-equation"
    left, right = (a * a + 4 * b * b) * c * c, (a * a + 3 * b * b) * d * d
    _require(left == right, step, f"(a^2 + 4b^2)c^2 = {left} differs from (a^2 + 3b^2)d^2 = {right}")
    return ProofStep(name=step, values={})


def gcd_quotient_coprime(a: int, b: int) -> bool:
    """``gcd(a^2 + 4b^2, a^2 + 3b^2) == 1`` whenever ``gcd(a, b) == 1``."""
    return gcd(a * a + 4 * b * b, a * a + 3 * b * b) == 1


def gcd_quotient_step(a: int, b: int) -> ProofStep:
    """Record ``r = gcd(a^2 + 4b^2, a^2 + 3b^2)``, which divides both ``a^2`` and ``b^2``."""
    step = "gcd-quotient-coprime"
    r = gcd(a * a + 4 * b * b, a * a + 3 * b * b)
    _require(r == 1, step, f"r = {r} for (a, b) = ({a}, {b})")
    return ProofStep(name=step, values={"r": r})


def split_squares_step(a: int, b: int, c: int, d: int) -> ProofStep:
    """With ``r = 1`` and ``(c, d) = 1``: ``a^2 + (2b)^2 = d^2`` and ``a^2 + 3b^2 = c^2``."""
    step = "split-into-squares"
    _require(a * a + 4 * b * b == d * d, step, f"a^2 + (2b)^2 = {a * a + 4 * b * b} differs from d^2 = {d * d}")
    _require(a * a + 3 * b * b == c * c, step, f"a^2 + 3b^2 = {a * a + 3 * b * b} differs from c^2 = {c * c}")
    return ProofStep(name=step, values={})


def conic_step(a: int, b: int, c: int) -> ProofStep:
    """
    Parametrize ``c^2 = 3b^2 + a^2`` as ``2a = x1^2 - 3y1^2``, ``b = x1 y1``.

    Both factor splits of 3 are tried; with ``(p, q) = (3, 1)`` the roles of
    the generators are exchanged, which flips the sign of ``a`` and leaves
    every later identity intact.
    """
    step = "conic-parametrization"
    try:
        params = conic_decompose(3, a, b, c)
    except ValueError as e:
        raise ContractError(step, str(e)) from e
    for param in params:
        if param.parity_case is not ParityCase.DY_ODD:
            continue
        x1, y1 = (param.m, param.n) if param.p == 1 else (param.n, param.m)
        if x1 * y1 == b and abs(x1 * x1 - 3 * y1 * y1) == 2 * abs(a):
            return ProofStep(name=step, values={"p": param.p, "q": param.q, "x1": x1, "y1": y1})
    raise ContractError(step, f"no split of D = 3 gives 2a = x1^2 - 3y1^2, b = x1 y1 for (a, b, c) = ({a}, {b}, {c})")


def descent_identity_step(x1: int, y1: int, d: int) -> ProofStep:
    """
    Check ``(2d)^2 == x1^4 + 10 x1^2 y1^2 + 9 y1^4``.

    Substituting ``2a = x1^2 - 3y1^2`` into ``d^2 = a^2 + 4b^2`` gives the
    identity for ``2d``, not ``d``; both are recorded.
    """
    step = "descent-identity"
    two_d = 2 * d
    value = eval_form(LIFTED_FORM, x1, y1)
    _require(two_d * two_d == value, step, f"(2d)^2 = {two_d * two_d} differs from form(x1, y1) = {value}")
    return ProofStep(name=step, values={"d": d, "two_d": two_d})


def measure_step(x: int, y: int, x1: int, y1: int) -> ProofStep:
    """Check ``x1 y1 < xy``."""
    step = "measure-decrease"
    _require(x1 * y1 < x * y, step, f"x1 y1 = {x1 * y1} is not below xy = {x * y}")
    return ProofStep(name=step, values={"before": x * y, "after": x1 * y1})


def odd_branch_pythagorean_step(a: int, b: int, d: int) -> ProofStep:
    """Decompose the primitive triple ``a^2 + (2b)^2 = d^2`` as ``a = x1^2 - y1^2``, ``2b = 2 x1 y1``."""
    step = "odd-branch-pythagorean"
    try:
        triple = pythagorean_decompose(a, 2 * b, d)
    except (DecompositionError, ParameterError) as e:
        raise ContractError(step, str(e)) from e
    x1, y1 = triple.gen_m, triple.gen_n
    _require(x1 * x1 - y1 * y1 == a and x1 * y1 == b, step, f"generators ({x1}, {y1}) do not give (a, b) = ({a}, {b})")
    return ProofStep(name=step, values={"x1": x1, "y1": y1})


def odd_branch_identity(x1: int, y1: int) -> bool:
    """``(x1^2 - y1^2)^2 + 3 (x1 y1)^2 == x1^4 + x1^2 y1^2 + y1^4``."""
    return (x1 * x1 - y1 * y1) ** 2 + 3 * (x1 * y1) ** 2 == eval_form(ODD_BRANCH_FORM, x1, y1)


def odd_branch_target_step(x1: int, y1: int, c: int) -> ProofStep:
    """Check ``c^2 == x1^4 + x1^2 y1^2 + y1^4``."""
    step = "odd-branch-target"
    _require(odd_branch_identity(x1, y1), step, f"expansion identity fails at ({x1}, {y1})")
    value = eval_form(ODD_BRANCH_FORM, x1, y1)
    _require(c * c == value, step, f"c^2 = {c * c} differs from x1^4 + x1^2 y1^2 + y1^4 = {value}")
    return ProofStep(name=step, values={"c": c})


def decomposition_identity(x: int, y: int) -> bool:
    """``(x^2 - 3y^2)^2 + (4xy)^2 == x^4 + 10x^2y^2 + 9y^4``."""
    return (x * x - 3 * y * y) ** 2 + (4 * x * y) ** 2 == eval_form(LIFTED_FORM, x, y)


def _case1_prefix(x: int, y: int, z: int, trace: DescentTrace) -> None:
    claim = coprimality_claim_check(x, y)
    trace.steps.append(ProofStep(name="claim-coprimality", values={"gcd": claim.gcd}))
    trace.steps.append(pythagorean_step(x, y, z))
    trace.steps.append(generator_parity_step(trace.value("m"), trace.value("n")))
    trace.steps.append(four_split_step(x, y, trace.value("m"), trace.value("n1")))


def descend_even_branch(x: int, y: int, z: int) -> DescentTrace:
    """
    Run the descent for ``x`` even, ``y`` odd, ``3 | y``.

    Parameters
    ----------
    x, y, z : int
        A nonzero solution of ``z^2 = x^4 + 10x^2y^2 + 9y^4`` with ``gcd(x, y) = 1``.

    Returns
    -------
    DescentTrace
        Every intermediate (``m, n, n1, a, b, c, d, r, x1, y1``) and the
        descended solution ``(x1, y1, 2d)`` with ``x1 y1 < xy``.

    Raises
    ------
    PreconditionError
        If the input is outside the branch.
    ContractError
        Naming the first step whose identity or parity check fails.

    Notes
    -----
    The argument asserts ``a`` odd and then ``a`` even; both parity checks
    are replayed as stated, so a genuine input would stop at
    ``parity-a-even``. No such input exists.
    """
    x, y, z = _require_branch_input(x, y, z, x_even=True)
    trace = DescentTrace(input=Solution.of(x, y, z), measure_before=x * y)
    _case1_prefix(x, y, z, trace)
    a, b, c, d = (trace.value(name) for name in ("a", "b", "c", "d"))
    trace.steps.append(abd_odd_step(a, b, d))
    trace.steps.append(a_even_step(a))
    trace.steps.append(quotient_equation_step(a, b, c, d))
    trace.steps.append(gcd_quotient_step(a, b))
    trace.steps.append(split_squares_step(a, b, c, d))
    trace.steps.append(conic_step(a, b, c))
    x1, y1 = trace.value("x1"), trace.value("y1")
    trace.steps.append(descent_identity_step(x1, y1, d))
    trace.steps.append(measure_step(x, y, x1, y1))
    trace.output = Solution.of(x1, y1, 2 * d)
    trace.measure_after = x1 * y1
    logger.warning(f"Descent step completed for ({x}, {y}, {z}): measure {x * y} -> {x1 * y1}")
    return trace


def trace_odd_branch(x: int, y: int, z: int) -> DescentTrace:
    """
    Run the ``x`` odd, ``y`` even branch down to ``c^2 = x1^4 + x1^2 y1^2 + y1^4``.

    Returns
    -------
    DescentTrace
        Output ``(x1, y1, c)``, a solution of the branch-target form.

    Raises
    ------
    PreconditionError
        If the input is outside the branch.
    ContractError
        Naming the first step whose check fails.
    """
    x, y, z = _require_branch_input(x, y, z, x_even=False)
    trace = DescentTrace(input=Solution.of(x, y, z), measure_before=x * y)
    _case1_prefix(x, y, z, trace)
    a, b, c, d = (trace.value(name) for name in ("a", "b", "c", "d"))
    trace.steps.append(acd_odd_b_even_step(a, b, c, d))
    trace.steps.append(quotient_equation_step(a, b, c, d))
    trace.steps.append(gcd_quotient_step(a, b))
    trace.steps.append(split_squares_step(a, b, c, d))
    trace.steps.append(odd_branch_pythagorean_step(a, b, d))
    x1, y1 = trace.value("x1"), trace.value("y1")
    trace.steps.append(odd_branch_target_step(x1, y1, c))
    trace.output = Solution.of(x1, y1, c)
    logger.warning(f"Odd branch reached the target form from ({x}, {y}, {z}): ({x1}, {y1}, {c})")
    return trace


def branch_odd_case(x: int, y: int, z: int) -> tuple[int, int, int]:
    """Return the ``(x1, y1, c)`` the odd branch produces; see ``trace_odd_branch``."""
    output = trace_odd_branch(x, y, z).output
    assert output is not None
    return output.x, output.y, output.z


def in_branch_domain(s: Solution) -> bool:
    """Whether a solution of the lifted form meets the preconditions of either case-1 branch."""
    return (
        s.x * s.y * s.z != 0
        and gcd(s.x, s.y) == 1
        and s.y % 3 == 0
        and (s.x - s.y) % 2 == 1
        and s.z * s.z == eval_form(LIFTED_FORM, s.x, s.y)
    )


def vacuity_scan(bound: int, options: SearchOptions | None = None) -> list[Solution]:
    """
    List every input to the case-1 branches with ``x, y <= bound``.

    The coprime box is searched for solutions of the lifted form and the
    hits are filtered by the branch preconditions. The expected result is
    empty.

    Parameters
    ----------
    bound : int
        Side of the scanned box.
    options : SearchOptions, optional
        Chunking and worker settings; the search is always coprime-only and
        excludes trivial solutions.
    """
    options = (options or SearchOptions()).model_copy(update={"coprime_only": True, "exclude_trivial": True})
    certificate = search(LIFTED_FORM, bound, options)
    hits = [s for s in certificate.solutions_found if in_branch_domain(s)]
    if hits:
        logger.warning(f"Vacuity scan to {bound} found {len(hits)} branch input(s)")
    else:
        logger.info(f"Vacuity scan to {bound}: no input satisfies the branch preconditions")
    return hits


def trace_branch(s: Solution) -> DescentTrace:
    """Dispatch a branch input to the even or odd branch by the parity of ``x``."""
    if s.x % 2 == 0:
        return descend_even_branch(s.x, s.y, s.z)
    return trace_odd_branch(s.x, s.y, s.z)
