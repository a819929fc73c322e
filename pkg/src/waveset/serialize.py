"""Text and JSON forms of the exact objects.

Set expressions look like ``[-2pi,-pi) u [pi,2pi)``.  Endpoints are sums of
rational multiples of pi and rationals: ``32pi/7``, ``32/7pi``, ``-pi``,
``pi/7``, ``3``, ``1/2`` or ``-4pi+1/2``.  Decimal literals are rejected so
that every parsed value is exact.

In JSON a rational is ``[numerator, denominator]`` and a scalar
``a*pi + b`` is ``{"pi": [p, q], "rat": [r, s]}`` with ``rat`` omitted
when zero.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .congruence import DilationWitness, TranslationWitness, WaveletSetCertificate
from .cyclotomic import Cyclotomic
from .errors import ParseError
from .exact import ExactScalar
from .intervals import Interval, IntervalSet

__all__ = [
    "parse_scalar",
    "parse_set",
    "parse_pi_multiple",
    "fraction_to_json",
    "fraction_from_json",
    "scalar_to_json",
    "scalar_from_json",
    "set_to_json",
    "set_from_json",
    "certificate_to_json",
    "certificate_from_json",
    "map_to_json",
    "map_from_json",
    "value_to_json",
    "value_from_json",
    "multiplier_to_json",
    "multiplier_from_json",
    "function_to_json",
    "function_from_json",
]

_TERM = re.compile(
    r"""
    (?P<sign>[+-]?)
    (?:(?P<num>\d+)(?:/(?P<den>\d+))?)?
    \*?
    (?P<pi>pi|π)?
    (?:/(?P<post>\d+))?
    """,
    re.VERBOSE,
)


def parse_scalar(text: str) -> ExactScalar:
    """Parse an endpoint such as ``-32pi/7`` or ``2pi+1/2``."""
    src = re.sub(r"\s+", "", str(text))
    if not src:
        raise ParseError("empty number")
    if "." in src or "e" in src.replace("pi", ""):
        raise ParseError(f"only exact rationals and multiples of pi are accepted, got {text!r}")
    pi_coeff = Fraction(0)
    rat = Fraction(0)
    pos = 0
    while pos < len(src):
        m = _TERM.match(src, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot parse {text!r} at position {pos}")
        if pos > 0 and not m.group("sign"):
            raise ParseError(f"missing + or - between terms in {text!r}")
        num, den, has_pi, post = m.group("num"), m.group("den"), m.group("pi"), m.group("post")
        if num is None and not has_pi:
            raise ParseError(f"cannot parse {text!r} at position {pos}")
        if post is not None and not has_pi:
            raise ParseError(f"cannot parse {text!r}")
        if post is not None and den is not None:
            raise ParseError(f"two denominators in {text!r}")
        if den is not None and int(den) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        value = Fraction(int(num) if num else 1, int(den) if den else 1)
        if post is not None:
            if int(post) == 0:
                raise ParseError(f"zero denominator in {text!r}")
            value /= int(post)
        if m.group("sign") == "-":
            value = -value
        if has_pi:
            pi_coeff += value
        else:
            rat += value
        pos = m.end()
    return ExactScalar(pi_coeff, rat)


def parse_pi_multiple(text: str) -> ExactScalar:
    """A bare rational ``q`` means ``q*pi``; anything mentioning pi is parsed as a scalar."""
    src = str(text).strip()
    if "pi" in src or "π" in src:
        return parse_scalar(src)
    try:
        if "." in src:
            raise ValueError
        return ExactScalar.pi(Fraction(src))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational multiple of pi, got {text!r}") from None


_INTERVAL = re.compile(r"\[([^,\[\])]+),([^,\[\])]+)\)")


def parse_set(text: str) -> IntervalSet:
    """Parse a union of half-open intervals; ``empty`` or ``{}`` is the empty set."""
    src = re.sub(r"\s+", "", str(text))
    if src in ("", "empty", "{}", "∅"):
        return IntervalSet()
    parts = re.split(r"[uU∪]", src)
    intervals = []
    for part in parts:
        m = _INTERVAL.fullmatch(part)
        if m is None:
            raise ParseError(f"expected an interval like [a,b), got {part!r}")
        lo, hi = parse_scalar(m.group(1)), parse_scalar(m.group(2))
        if not lo < hi:
            raise ParseError(f"empty or reversed interval {part!r}")
        intervals.append(Interval(lo, hi))
    return IntervalSet(intervals)


def fraction_to_json(q: Fraction) -> list[int]:
    q = Fraction(q)
    return [q.numerator, q.denominator]


def fraction_from_json(obj) -> Fraction:
    if isinstance(obj, bool):
        raise ParseError(f"expected a rational, got {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except ValueError:
            raise ParseError(f"expected a rational, got {obj!r}") from None
    if isinstance(obj, list) and len(obj) == 2 and all(isinstance(v, int) and not isinstance(v, bool) for v in obj):
        if obj[1] == 0:
            raise ParseError("zero denominator")
        return Fraction(obj[0], obj[1])
    raise ParseError(f"expected [numerator, denominator], got {obj!r}")


def scalar_to_json(x: ExactScalar) -> dict:
    out = {"pi": fraction_to_json(x.pi_coeff)}
    if x.rat_part:
        out["rat"] = fraction_to_json(x.rat_part)
    return out


def scalar_from_json(obj) -> ExactScalar:
    if isinstance(obj, str):
        return parse_scalar(obj)
    if not isinstance(obj, dict) or "pi" not in obj:
        raise ParseError(f"expected a scalar object, got {obj!r}")
    return ExactScalar(fraction_from_json(obj["pi"]), fraction_from_json(obj.get("rat", 0)))


def set_to_json(E: IntervalSet) -> dict:
    return {
        "text": str(E),
        "parts": [{"lo": scalar_to_json(iv.lo), "hi": scalar_to_json(iv.hi)} for iv in E],
    }


def set_from_json(obj) -> IntervalSet:
    if isinstance(obj, str):
        return parse_set(obj)
    try:
        parts = obj["parts"]
        return IntervalSet(Interval(scalar_from_json(p["lo"]), scalar_from_json(p["hi"])) for p in parts)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed interval set: {exc}") from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def certificate_to_json(cert: WaveletSetCertificate) -> dict:
    dw = cert.dilation
    return {
        "type": "wavelet_set_certificate",
        "set": set_to_json(cert.set),
        "dilation_factor": fraction_to_json(cert.dilation_factor),
        "translation": [{"piece": set_to_json(p), "shift": s} for p, s in cert.translation.pieces],
        "dilation": {
            "neg_anchor": scalar_to_json(dw.neg_anchor),
            "pos_anchor": scalar_to_json(dw.pos_anchor),
            "pieces": [{"piece": set_to_json(p), "power": k} for p, k in dw.pieces],
        },
    }


def certificate_from_json(obj) -> WaveletSetCertificate:
    try:
        if obj.get("type") != "wavelet_set_certificate":
            raise ParseError("not a wavelet set certificate")
        d = fraction_from_json(obj["dilation_factor"])
        tw = TranslationWitness(tuple((set_from_json(p["piece"]), int(p["shift"])) for p in obj["translation"]))
        dil = obj["dilation"]
        dw = DilationWitness(
            tuple((set_from_json(p["piece"]), int(p["power"])) for p in dil["pieces"]),
            scalar_from_json(dil["neg_anchor"]),
            scalar_from_json(dil["pos_anchor"]),
            d,
        )
        return WaveletSetCertificate(set_from_json(obj["set"]), tw, dw, d)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed certificate: {exc}") from None


def map_to_json(sigma) -> dict:
    return {
        "type": "interpolation_map",
        "d": fraction_to_json(sigma.d),
        "source": set_to_json(sigma.source),
        "target": set_to_json(sigma.target),
        "pieces": [{"piece": set_to_json(p), "shift": fraction_to_json(m)} for p, m in sigma.pieces],
    }


def map_from_json(obj):
    from .interpolation import InterpolationMap

    try:
        pieces = [(set_from_json(p["piece"]), fraction_from_json(p["shift"])) for p in obj["pieces"]]
        return InterpolationMap(set_from_json(obj["source"]), pieces, fraction_from_json(obj["d"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed map: {exc}") from None


def value_to_json(value):
    """Exact Gaussian rationals as ``{re, im}`` pairs, other cyclotomics by coefficients, floats as numbers."""
    if isinstance(value, Cyclotomic):
        if 4 % value.n == 0:
            z = value._lift(4)
            return {"re": fraction_to_json(z.coeffs[0]), "im": fraction_to_json(z.coeffs[1])}
        return {"cyclotomic": {"n": value.n, "coeffs": [fraction_to_json(c) for c in value.coeffs]}}
    z = complex(value)
    return {"re": z.real, "im": z.imag}


def _part(obj, key):
    v = obj.get(key, 0)
    if isinstance(v, float):
        return v
    return fraction_from_json(v)


def value_from_json(obj):
    """Inverse of :func:`value_to_json`; also accepts ``{"root_of_unity": [k, n]}``, ``{"cis_pi": q}``, numbers."""
    if isinstance(obj, bool):
        raise ParseError(f"unsupported coefficient {obj!r}")
    if isinstance(obj, int):
        return Cyclotomic.rational(obj)
    if isinstance(obj, float):
        return complex(obj)
    if isinstance(obj, str):
        try:
            return Cyclotomic.rational(Fraction(obj))
        except ValueError:
            raise ParseError(f"unsupported coefficient {obj!r}") from None
    if not isinstance(obj, dict):
        raise ParseError(f"unsupported coefficient {obj!r}")
    if "root_of_unity" in obj:
        k, n = obj["root_of_unity"]
        if not isinstance(k, int) or not isinstance(n, int) or n <= 0:
            raise ParseError(f"root_of_unity needs integers [k, n > 0], got {obj['root_of_unity']!r}")
        return Cyclotomic.root_of_unity(k, n)
    if "cis_pi" in obj:
        return Cyclotomic.cis_pi(fraction_from_json(obj["cis_pi"]))
    if "cos_pi" in obj:
        return Cyclotomic.cos_pi(fraction_from_json(obj["cos_pi"]))
    if "i_sin_pi" in obj:
        return Cyclotomic.i_sin_pi(fraction_from_json(obj["i_sin_pi"]))
    if "cyclotomic" in obj:
        c = obj["cyclotomic"]
        return Cyclotomic(int(c["n"]), [fraction_from_json(v) for v in c["coeffs"]])
    if "re" in obj or "im" in obj:
        re_, im_ = _part(obj, "re"), _part(obj, "im")
        if isinstance(re_, float) or isinstance(im_, float):
            return complex(float(re_), float(im_))
        return Cyclotomic.gaussian(re_, im_)
    raise ParseError(f"unsupported coefficient {obj!r}")


def multiplier_to_json(h) -> dict:
    return {
        "d": fraction_to_json(h.d),
        "pieces": [{"piece": set_to_json(IntervalSet([iv])), "value": value_to_json(v)} for iv, v in h.atoms],
    }


def multiplier_from_json(obj, d=2):
    """A multiplier object, or a bare value meaning a constant multiplier."""
    from .coefficients import PeriodicMultiplier, constant_multiplier

    if isinstance(obj, dict) and "pieces" in obj:
        d = fraction_from_json(obj.get("d", fraction_to_json(Fraction(d))))
        try:
            pieces = [(set_from_json(p["piece"]), value_from_json(p["value"])) for p in obj["pieces"]]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed multiplier: {exc}") from None
        return PeriodicMultiplier(pieces, d)
    return constant_multiplier(value_from_json(obj), d)


def function_to_json(f) -> dict:
    return {
        "type": "modulated_piecewise",
        "terms": [
            {
                "coeff": [t.coeff.real, t.coeff.imag],
                "freq": fraction_to_json(t.freq),
                "lo": scalar_to_json(t.support.lo),
                "hi": scalar_to_json(t.support.hi),
            }
            for t in f.terms
        ],
    }


def function_from_json(obj):
    from .spectral import ModulatedPiecewise, Term

    try:
        return ModulatedPiecewise(
            Term(
                complex(*t["coeff"]),
                fraction_from_json(t["freq"]),
                Interval(scalar_from_json(t["lo"]), scalar_from_json(t["hi"])),
            )
            for t in obj["terms"]
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed function: {exc}") from None
