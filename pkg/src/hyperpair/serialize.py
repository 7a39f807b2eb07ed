"""JSON encoding of curves, divisors and pairing results.

Integers travel as decimal strings; extension-field coefficients are
integer vectors (low-to-high in t).  Parse failures raise ParseError
carrying a JSON pointer to the offending field.
"""
from .curve import CurveParams, validate_curve
from .errors import MathError, ParseError
from .field import FieldDescriptor
from .jacobian import ReducedDivisor, check_invariants


def _int(value, pointer):
    if isinstance(value, bool):
        raise ParseError(f"{pointer}: expected an integer", pointer)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip(), 10)
        except ValueError:
            pass
    raise ParseError(f"{pointer}: expected a decimal integer, got {value!r}", pointer)


def _list(obj, key, pointer):
    if key not in obj:
        raise ParseError(f"{pointer}/{key}: missing field", f"{pointer}/{key}")
    val = obj[key]
    if not isinstance(val, list):
        raise ParseError(f"{pointer}/{key}: expected a list", f"{pointer}/{key}")
    return val


def _object(obj, pointer):
    if not isinstance(obj, dict):
        raise ParseError(f"{pointer or '/'}: expected a JSON object", pointer)
    return obj


def _coeff(K, value, pointer):
    """A base- or extension-field element from an int/string or an int vector."""
    if isinstance(value, list):
        if len(value) > K.degree:
            raise ParseError(f"{pointer}: vector longer than field degree", pointer)
        return K.from_coeffs([_int(c, f"{pointer}/{i}") % K.p for i, c in enumerate(value)])
    return K.from_int(_int(value, pointer))


def _encode_raw(K, a):
    if K.degree == 1:
        return str(a)
    return [str(c) for c in K.coeffs(a)]


def encode_value(K, a):
    """Field value as a coefficient-string vector (length = field degree)."""
    return [str(c) for c in K.coeffs(a)] if K.degree > 1 else [str(a)]


def curve_to_json(curve):
    K = curve.base
    out = {"p": str(K.p), "base_degree": K.degree, "genus": curve.genus}
    if K.degree > 1:
        out["base_modulus"] = [int(c) for c in K.modulus]
    out["H"] = [_encode_raw(K, c) for c in curve.H]
    out["F"] = [_encode_raw(K, c) for c in curve.F]
    return out


def curve_from_json(obj, pointer=""):
    obj = _object(obj, pointer)
    if "p" not in obj:
        raise ParseError(f"{pointer}/p: missing field", f"{pointer}/p")
    p = _int(obj["p"], f"{pointer}/p")
    degree = _int(obj.get("base_degree", 1), f"{pointer}/base_degree")
    try:
        if degree > 1:
            modulus = [_int(c, f"{pointer}/base_modulus/{i}")
                       for i, c in enumerate(_list(obj, "base_modulus", pointer))]
            K = FieldDescriptor(p, degree, modulus)
        else:
            K = FieldDescriptor(p)
    except MathError as exc:
        raise ParseError(f"{pointer}/p: {exc}", f"{pointer}/p") from exc
    F = [_coeff(K, c, f"{pointer}/F/{i}") for i, c in enumerate(_list(obj, "F", pointer))]
    H = [_coeff(K, c, f"{pointer}/H/{i}") for i, c in enumerate(obj.get("H", []))]
    genus = obj.get("genus")
    genus = (len(F) - 2) // 2 if genus is None else _int(genus, f"{pointer}/genus")
    curve = CurveParams(genus, tuple(H), tuple(F), K)
    try:
        validate_curve(curve)
    except MathError as exc:
        field = "F" if "F" in str(exc) or "degree" in str(exc).lower() else "genus"
        raise ParseError(f"{pointer}/{field}: {exc}", f"{pointer}/{field}") from exc
    return curve


def divisor_to_json(D):
    K = D.jac.field
    return {
        "u": [[str(c) for c in K.coeffs(a)] for a in D.u],
        "v": [[str(c) for c in K.coeffs(a)] for a in D.v],
        "ext_degree": D.ext_degree,
    }


def divisor_from_json(obj, jac, k=None, pointer=""):
    """Parse a divisor into the Jacobian ``jac``; checks the Mumford conditions.

    ``ext_degree`` must divide ``k`` when given, and the coefficients must
    lie in the subfield it names.
    """
    obj = _object(obj, pointer)
    K = jac.field
    u = [_coeff(K, c, f"{pointer}/u/{i}") for i, c in enumerate(_list(obj, "u", pointer))]
    v = [_coeff(K, c, f"{pointer}/v/{i}") for i, c in enumerate(obj.get("v", []))]
    while u and u[-1] == K.zero:
        u.pop()
    while v and v[-1] == K.zero:
        v.pop()
    d = _int(obj.get("ext_degree", jac.ext), f"{pointer}/ext_degree")
    limit = jac.ext if k is None else k
    if d < 1 or limit % d:
        raise ParseError(f"{pointer}/ext_degree: {d} does not divide {limit}",
                         f"{pointer}/ext_degree")
    if not u or u[-1] != K.one:
        raise ParseError(f"{pointer}/u: invariant (1) violated, u must be monic",
                         f"{pointer}/u")
    if len(v) >= len(u) or len(u) - 1 > jac.genus:
        raise ParseError(f"{pointer}/v: invariant (2) violated, need deg v < deg u <= g",
                         f"{pointer}/v")
    D = ReducedDivisor(jac, u, v)
    try:
        check_invariants(D)
    except MathError as exc:
        raise ParseError(f"{pointer}/u: invariant (3) violated, {exc}", f"{pointer}/u") from exc
    if not all(jac.in_subfield(c, d) for c in D.u + D.v):
        raise ParseError(f"{pointer}/ext_degree: coefficients are not in F_q^{d}",
                         f"{pointer}/ext_degree")
    return D


def pairing_result(K, value, name, meta):
    return {"value": encode_value(K, value), "pairing": name,
            "loop_bits": int(meta["loop_bits"]), "final_exp": bool(meta["final_exp"])}
