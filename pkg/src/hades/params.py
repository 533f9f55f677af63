"""Public scheme parameters, derived noise budgets and named profiles."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import ParamsError
from .ring import Ring, is_prime

FLAVORS = ("basic", "fae")

# Empirical operating ranges enforced when ``enforce_ranges`` is set.
SCALE_RANGE = (10**2, 10**4)
EPSILON_RANGE = (Fraction(1, 1000), Fraction(1, 100))


@dataclass(frozen=True)
class Params:
    """All public parameters of the scheme.

    ``noise_bound`` bounds every noise coefficient, ``u_bound`` the
    encryption randomness (1: ternary), ``gadget_base`` the digit base used
    to decompose ciphertexts against the compare-eval key.  ``tau`` defaults
    to scale**2 // 2.  Derived values are exposed as properties.
    """

    n: int
    q: int
    noise_bound: int
    scale: int
    epsilon: float
    gadget_base: int
    u_bound: int = 1
    tau: int | None = None
    ntt: bool = False
    flavor: str = "basic"
    profile: str = "custom"
    enforce_ranges: bool = True

    def __post_init__(self):
        if self.tau is None:
            object.__setattr__(self, "tau", self.scale**2 // 2)

    @cached_property
    def ring(self) -> Ring:
        return Ring(self.n, self.q, ntt=self.ntt)

    @property
    def perturbation_radius(self) -> int:
        """D = floor(epsilon * scale), exact on the decimal value of epsilon."""
        return math.floor(Fraction(repr(self.epsilon)) * self.scale)

    @property
    def gadget_length(self) -> int:
        """Smallest ell with gadget_base**ell >= q."""
        ell, power = 0, 1
        while power < self.q:
            power *= self.gadget_base
            ell += 1
        return max(ell, 1)

    @property
    def threshold(self) -> int:
        return self.tau

    @property
    def ciphertext_noise_bound(self) -> int:
        """Worst-case |e1 + e2*s - u*e_pk| plus the FAE e_m term, per ciphertext."""
        b = self.noise_bound
        return b + b * (1 + 2 * self.n * self.u_bound)

    @property
    def gadget_noise_bound(self) -> int:
        return self.gadget_length * self.n * (self.gadget_base // 2) * self.noise_bound

    @property
    def max_noise(self) -> int:
        """N_max: worst-case evaluation noise for a pair of ciphertexts."""
        return self.scale * 2 * self.ciphertext_noise_bound + self.gadget_noise_bound

    @property
    def max_plaintext(self) -> int:
        """Largest |m| such that any difference of two plaintexts cannot wrap mod q.

        Solves 2*M*scale^2 + N_max + 2*D*scale < q/2 for the largest integer M.
        """
        s2 = self.scale**2
        slack = self.q - 1 - 2 * self.max_noise - 4 * self.perturbation_radius * self.scale
        return max(slack // (4 * s2), 0)

    def replace(self, **changes) -> Params:
        return dataclasses.replace(self, **changes)

    # -- profile text -------------------------------------------------

    _TEXT_FIELDS = (
        "profile", "n", "q", "noise_bound", "u_bound", "scale", "epsilon",
        "gadget_base", "tau", "ntt", "flavor", "enforce_ranges",
    )

    def to_text(self) -> str:
        """Human-readable key=value profile; parsed back by :meth:`from_text`."""
        lines = []
        for name in self._TEXT_FIELDS:
            value = getattr(self, name)
            if name == "epsilon":
                value = repr(float(value))
            elif isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{name}={value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Params:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected key=value, got {line!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            raw[key] = value
        unknown = set(raw) - set(cls._TEXT_FIELDS)
        if unknown:
            raise ValueError(f"unknown profile keys: {sorted(unknown)}")
        kwargs = {}
        for key, value in raw.items():
            if key in ("profile", "flavor"):
                kwargs[key] = value
            elif key == "epsilon":
                kwargs[key] = float(value)
            elif key in ("ntt", "enforce_ranges"):
                if value not in ("true", "false"):
                    raise ValueError(f"{key} must be true or false, got {value!r}")
                kwargs[key] = value == "true"
            else:
                kwargs[key] = int(value)
        return cls(**kwargs)


def validate(p: Params) -> Params:
    """Check every parameter invariant; raise :class:`ParamsError` listing failures."""
    bad = []
    n, q, s, b = p.n, p.q, p.scale, p.noise_bound
    if n < 1 or n & (n - 1):
        bad.append(f"n is a power of 2 (n={n})")
    if not is_prime(q):
        bad.append(f"q is prime (q={q})")
    elif p.ntt and q % (2 * n) != 1:
        bad.append(f"q = 1 mod 2n for NTT (q mod {2 * n} = {q % (2 * n)})")
    if q >= 1 << 62:
        bad.append(f"q < 2^62 (q has {q.bit_length()} bits)")
    if b < 1:
        bad.append(f"B_e >= 1 (B_e={b})")
    if p.u_bound != 1:
        bad.append(f"B_u = 1 for ternary encryption randomness (B_u={p.u_bound})")
    if p.gadget_base < 2:
        bad.append(f"B_g >= 2 (B_g={p.gadget_base})")
    if p.gadget_base % 2:
        bad.append(f"B_g even (B_g={p.gadget_base})")
    if p.flavor not in FLAVORS:
        bad.append(f"flavor in {FLAVORS} (flavor={p.flavor!r})")
    # ternary secret: ||sk||_inf = 1
    if not s > max(2 * b, 1):
        bad.append(f"scale > max(2*B_e, ||sk||) ({s} > {max(2 * b, 1)})")
    if p.enforce_ranges:
        lo, hi = SCALE_RANGE
        if not lo <= s <= hi:
            bad.append(f"{lo} <= scale <= {hi} (scale={s})")
        eps = Fraction(repr(p.epsilon))
        lo, hi = EPSILON_RANGE
        if not lo <= eps <= hi:
            bad.append(f"1e-3 <= epsilon <= 1e-2 (epsilon={p.epsilon})")
    if p.perturbation_radius < 1:
        bad.append(f"D = floor(epsilon*scale) >= 1 (D={p.perturbation_radius})")
    if bad:
        # derived quantities are meaningless on a malformed base
        raise ParamsError(bad)

    n_max, tau, s2, d = p.max_noise, p.threshold, s * s, p.perturbation_radius
    if not n_max < tau:
        bad.append(f"N_max < tau ({n_max} < {tau})")
    if not 2 * tau <= s2:
        bad.append(f"tau <= scale^2/2 ({tau} <= {s2}/2)")
    if not s2 > 2 * n_max:
        bad.append(f"scale^2 > 2*N_max ({s2} > {2 * n_max})")
    if not s2 - (n_max + 2 * d * s) > 0:
        bad.append(f"scale^2 - (N_max + 2*D*scale) > 0 ({s2} - ({n_max} + {2 * d * s}))")
    m_max = p.max_plaintext
    if m_max < 1:
        bad.append(f"M_max >= 1: 2*M_max*scale^2 + N_max + 2*D*scale < q/2 has no solution (q={q})")
    elif not 2 * (m_max * s2 + n_max + d * s) < q:
        bad.append("M_max*scale^2 + N_max + D*scale < q/2")
    if bad:
        raise ParamsError(bad)
    return p


@lru_cache(maxsize=None)
def find_ntt_prime(n: int, bits: int = 60) -> int:
    """Largest prime q < 2**bits with q = 1 (mod 2n)."""
    step = 2 * n
    k = ((1 << bits) - 1) // step
    while k > 0:
        q = k * step + 1
        if is_prime(q):
            return q
        k -= 1
    raise ValueError(f"no NTT-friendly prime below 2^{bits} for n={n}")


def desk_profile(**overrides) -> Params:
    """Small ring, schoolbook multiplication; used by the test-suite."""
    base = dict(
        n=256, q=find_ntt_prime(256), noise_bound=2, scale=10**4, epsilon=1e-3,
        gadget_base=2**8, ntt=False, profile="desk",
    )
    base.update(overrides)
    return validate(Params(**base))


def default_profile(**overrides) -> Params:
    """n = 1024 with NTT multiplication; used for benchmarks and dataset runs."""
    base = dict(
        n=1024, q=find_ntt_prime(1024), noise_bound=1, scale=10**4, epsilon=1e-2,
        gadget_base=2**8, ntt=True, profile="default",
    )
    base.update(overrides)
    return validate(Params(**base))


PROFILES = {"desk": desk_profile, "default": default_profile}


def get_profile(name: str, **overrides) -> Params:
    try:
        factory = PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; choose from {sorted(PROFILES)}") from None
    return factory(**overrides)
