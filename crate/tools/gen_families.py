#!/usr/bin/env python3
"""Regenerate crates/core/fixtures/families.json from the transcribed family
expressions below. Coefficients are expanded with sympy and written as decimal
strings, constant term first; bivariate entries are arrays (over the main
variable) of arrays (over t).

After regenerating, update FIXTURE_SHA256 in crates/core/src/families/catalog.rs
with the digest printed on stdout.
"""
import hashlib
import json
import pathlib

from sympy import Poly, expand, symbols, sympify

x, y, z, t = symbols("x y z t")
VARS = {"x": x, "y": y, "z": z}


def bipoly(expr, var):
    v = VARS[var]
    p = Poly(expand(sympify(expr, locals={"x": x, "y": y, "z": z, "t": t})), v)
    deg = p.degree()
    out = []
    for k in range(deg + 1):
        c = Poly(p.coeff_monomial(v**k), t) if p.coeff_monomial(v**k) != 0 else None
        if c is None:
            out.append([])
            continue
        cd = c.degree()
        out.append([str(c.coeff_monomial(t**j)) for j in range(cd + 1)])
    return out


def tpoly(expr):
    c = Poly(expand(sympify(expr, locals={"t": t})), t)
    return [str(c.coeff_monomial(t**j)) for j in range(c.degree() + 1)]


def entry(var, printed, corrected=None):
    text = corrected if corrected is not None else printed
    e = {"var": var, "printed": printed, "coeffs": bipoly(text, var)}
    if corrected is not None:
        e["corrected"] = corrected
    return e


CUBIC7_PRINTED = "y**3-t*y**2-(2*t**2-7*t+21)*x+t**3+28"
CUBIC7 = "y**3-t*y**2-(2*t**2-7*t+21)*y+t**3+28"
CUBIC9_PRINTED = "y**3-3*(t**2-3*t+9)*x+(t-6)*(t**2-3*t+9)"
CUBIC9 = "y**3-3*(t**2-3*t+9)*y+(t-6)*(t**2-3*t+9)"
T4_MAIN = "x**5+10*x**3-5*t*x**2-15*x-t**2+t-16"
T4_SUB = "y**4+5*(t**2+16)*y**2+5*(t**2+16)*(t-2)**2"
T6_MAIN = "(x**2-5)**2*x+(20*x-8)*t-5*(x-1)**2*t**2+(5*x-2)*t**3-t**4"
T6_MAIN_ALT = "x**5-10*x**3-5*x**2*t**2+5*(t**3+2*t**2+4*t+5)*x-(t**3+2*t**2+5*t+8)*t"
T6_SUB = "y**4+5*(t+2)*(t**2+4)*t*y**2+5*(t**2+4)*(t+2)**2*(t-1)**2*t**2"
T8_MAIN = "(x+4)*(x-1)**4+20*(x-1)**2*t+(10*x**2-20*x+26)*t**2+(5*x**2-10*x+13)*t**3+(-5*x+6)*t**4+2*t**5"
T8_SUB = "y**4+5*(t+2)*(t**2+4)*t*y**2+5*(t**2+4)*(t+2)**2*(t+1)**2*t**2"

families = [
    {
        "id": "D5_47",
        "description": "Dihedral quintic over Q(sqrt(-47)) obtained from the quartic unit orbit",
        "group": "D5",
        "main": entry("x", "x**5+x**4+x**3-x**2-2*x-1"),
        "subfield": entry("y", "y**2+y+12"),
        "aux": [
            {"name": "resolvent_quintic", **entry("z", "z**5-10*z**3-2605*z**2+5860*z+443629")},
            {"name": "unit_quartic", **entry("x", "x**4-47*x**3+519*x**2+47*x+1")},
        ],
        "prime": 5,
        "classes": [],
    },
    {
        "id": "D5_235",
        "description": "Dihedral quintic over Q(sqrt(-235)), Eisenstein at 5",
        "group": "D5",
        "main": entry("x", "x**5-35*x**3+50*x+20", "x**5-35*x**2+50*x+20"),
        "subfield": entry("y", "y**2+y+59"),
        "aux": [
            {"name": "resolvent_quintic",
             **entry("z", "z**5-10*z**3-2605*z**2+5680*z+167504", "z**5-10*z**3-2605*z**2+5860*z+167504")},
        ],
        "prime": 5,
        "classes": [],
    },
    {
        "id": "T4",
        "description": "F20 quintic family, unramified over its cyclic quartic subfield",
        "group": "F20",
        "main": entry("x", T4_MAIN),
        "subfield": entry("y", T4_SUB),
        "aux": [
            {"name": "pre_transformation",
             **entry("z", "z**5-10*z**3+20*z**2+(5*t**2+65)*z-t**3-2*t**2-16*t-28")},
            {"name": "tschirnhaus_numerator",
             **entry("z", "(t+6)*z**4+(t-14)*z**3+(t**2-11*t-22)*z**2-(3*t**2+3*t-150)*z+4*t**3+20*t**2+68*t-8")},
            {"name": "tschirnhaus_denominator", **entry("z", "t**3+4*t**2+60*t+32")},
            {"name": "lucas_pair", **entry("z", "z**2-(t**2-t+16)*z+t**3+2*t**2+16*t+28")},
        ],
        "prime": 5,
        "classes": [[-5, 25], [1, 25], [3, 25], [9, 25]],
        "newton_hint": {"t_offset": 1, "t_step": 25, "u_offset": -9, "u_step": -10},
    },
    {
        "id": "T5",
        "description": "Lucas-indexed D5 specialization of the T4 quintic, t = 2 L(20i-5)",
        "group": "D5",
        "main": entry("x", T4_MAIN),
        "subfield": None,
        "quadratic": {"kind": "pell", "pell_c": 16, "factor": tpoly("-10"),
                      "printed": "sqrt(-sqrt((t^2+16)/500))"},
        "aux": [],
        "prime": 5,
        "classes": [[-5, 25], [1, 25], [3, 25], [9, 25]],
        "lucas": [{"scale": 2, "mult": 20, "offset": -5, "pell_c": 16}],
        "newton_hint": {"t_offset": 1, "t_step": 25, "u_offset": -9, "u_step": -10},
    },
    {
        "id": "T6",
        "description": "F20 quintic family from the genus one cyclic quartic",
        "group": "F20",
        "main": entry("x", T6_MAIN),
        "subfield": entry("y", T6_SUB),
        "aux": [
            {"name": "expanded_form", **entry("x", T6_MAIN_ALT)},
            {"name": "pre_transformation",
             **entry("z", "z**5-10*z**3+5*(t**3+2*t**2+4*t+4)*z**2-5*(t**4+2*t**3+4*t**2+8*t+3)*z+t**7+4*t**6+10*t**5+22*t**4+29*t**3+26*t**2+20*t+4")},
        ],
        "prime": 5,
        "classes": [[-1, 5], [-8, 25], [-2, 25], [0, 125]],
    },
    {
        "id": "T7",
        "description": "Lucas-indexed D5 specialization of the T6 quintic, t = L(4i-1)",
        "group": "D5",
        "main": entry("x", T6_MAIN),
        "subfield": None,
        "quadratic": {"kind": "pell", "pell_c": 4, "factor": tpoly("-5*t*(t+2)"),
                      "printed": "sqrt(-t(t+2)sqrt(5t^2+20))"},
        "aux": [],
        "prime": 5,
        "classes": [[-1, 5], [-8, 25], [-2, 25], [0, 125]],
        "lucas": [{"scale": 1, "mult": 4, "offset": -1, "pell_c": 4}],
    },
    {
        "id": "T8",
        "description": "F20 quintic family with Lucas-indexed D5 companions t = L(20i-15), L(100i-25)",
        "group": "F20",
        "main": entry("x", T8_MAIN),
        "subfield": entry("y", T8_SUB),
        "aux": [],
        "prime": 5,
        "classes": [[7, 25], [11, 25], [-2, 125], [0, 125], [989, 3125]],
        "lucas": [
            {"scale": 1, "mult": 20, "offset": -15, "pell_c": 4,
             "quadratic": {"kind": "pell", "pell_c": 4, "factor": tpoly("-5*t*(t+2)"),
                           "printed": "sqrt(-t(t+2)sqrt((t^2+4)/125))"}},
            {"scale": 1, "mult": 100, "offset": -25, "pell_c": 4,
             "quadratic": {"kind": "pell", "pell_c": 4, "factor": tpoly("-5*t*(t+2)"),
                           "printed": "sqrt(-t(t+2)sqrt((t^2+4)/125))"}},
        ],
    },
    {
        "id": "T9",
        "description": "F42 septic family from the apolar sextic",
        "group": "F42",
        "main": entry("x", "x**7-21*x**5+70*x**4-105*x**3-28*(4*t**2-12*t+33)*x**2+7*(96*t**2-288*t+859)*x+64*t**3-1264*t**2+3792*t-9642"),
        "subfield": entry("y", CUBIC7_PRINTED, CUBIC7),
        "quadratic": {"kind": "poly", "factor": tpoly("-7*(t**2-3*t+9)"), "printed": "sqrt(-7(t^2-3t+9))"},
        "aux": [],
        "prime": 7,
        "classes": [[0, 49], [5, 49], [8, 49], [17, 49], [20, 49], [25, 49]],
    },
    {
        "id": "T10",
        "description": "F42 septic family from the genus two sextic",
        "group": "F42",
        "main": entry("x", "x**7+21*x**5-7*(t**2-4*t+10)*x**4+28*(t**2-3*t+15)*x**3-7*(5*t**3-8*t**2+12*t+72)*x**2+7*(5*t+6)*(2*t**2-7*t+22)*x-t**5-20*t**4-94*t**3+410*t**2-1584*t+1224"),
        "subfield": entry("y", CUBIC7_PRINTED, CUBIC7),
        "quadratic": {"kind": "poly", "factor": tpoly("-7*(t-2)**2-28"), "printed": "sqrt(-7(t-2)^2-28)"},
        "aux": [],
        "prime": 7,
        "classes": [[2, 7], [-21, 49], [-18, 49], [-16, 49], [-8, 49], [11, 49], [743, 2401]],
    },
    {
        "id": "T11",
        "description": "F42 septic family, other direction with t -> 3-t",
        "group": "F42",
        "main": entry("x", "x**7-7*t*x**5-7*(t**2-4*t+11)*x**4+28*(t**2-t+3)*x**3+7*(3*t**2-13*t+36)*t*x**2+7*(t**4-18*t**3+68*t**2-176*t+192)*x-t**5-23*t**4+184*t**3-816*t**2+1536*t-2304"),
        "subfield": entry("y", CUBIC7_PRINTED, CUBIC7),
        "quadratic": {"kind": "poly", "factor": tpoly("-7*(t-1)**2-28"), "printed": "sqrt(-7(t-1)^2-28)"},
        "aux": [],
        "prime": 7,
        "classes": [[3, 7], [-17, 49], [-5, 49], [5, 49], [7, 49], [13, 49], [743, 2401]],
    },
    {
        "id": "T12",
        "description": "F54 nonic family",
        "group": "F54",
        "main": entry("x", "x**9+27*x**7-9*(t**3-4*t**2+11*t-6)*x**6+27*(t-2)*(t**2-4*t+8)*(t**2-3*t+9)*x**5-9*(t**2-4*t+8)*(t**2-3*t+9)*(t**4-7*t**3+26*t**2-48*t+36)*x**4-3*(7*t**2-18*t+63)*(t**2-3*t+9)*(t**2-4*t+8)**2*x**3-27*(t**2-5*t+10)*(t**2-4*t+8)**2*(t**2-3*t+9)**2*x**2+9*(t**3-6*t**2+18*t-24)*(t**2-3*t+9)**2*(t**2-4*t+8)**3*x-(t**6-11*t**5+61*t**4-213*t**3+475*t**2-660*t+468)*(t**2-3*t+9)**2*(t**2-4*t+8)**3"),
        "subfield": entry("y", CUBIC9_PRINTED, CUBIC9),
        "quadratic": {"kind": "poly", "factor": tpoly("-3*(t-2)**2-12"), "printed": "sqrt(-3(t-2)^2-12)"},
        "aux": [],
        "prime": 3,
        "classes": [[-12, 27], [11, 27], [6, 27]],
        "notes": ["printed class list '-12,11,6 or 11 mod 27' repeats 11; stored once"],
    },
    {
        "id": "T13",
        "description": "F54 nonic family, other direction with t -> 3-t",
        "group": "F54",
        "main": entry("x",
                      "x**9+27*x**7+9*(t**3-5*t**2+14*t-18)*x**6-27*(t-1)*(t**2-2*t+5)*(t**2-3*t+9)*x**5+9*(t**2-2*t+5)*(t**2-3*t+9)*(t**3-2*t**2+5*t+12)*x**4-3*(t**2-3*t+9)*(10*t**2-33*t+90)*(t**2-2*t+5)**2*x**3+27*(t**2-3*t+6)*(t**2-2*t+5)**2*(t**2-3*t+9)**2*x**2-9*(t**2-2*t+5)**3*(t**2-3*t+9)**3*x+(t**4-5*t**3+27*t**2-54*t+135)*(t**2-3*t+9)**2*(t**2-2*t+5)**3"),
        "subfield": entry("y", CUBIC9_PRINTED, CUBIC9),
        "quadratic": {"kind": "poly", "factor": tpoly("-3*(t-1)**2-12"), "printed": "sqrt(-3(t-1)^2-12)"},
        "aux": [],
        "prime": 3,
        "classes": [[5, 27], [10, 27]],
        "notes": ["printed factor (t^2-2*t+5) read as (t^2-2t+5)"],
    },
    {
        "id": "T14",
        "description": "F42 septic family from the cyclic cubic x^3+tx^2+(t-3)x-1",
        "group": "F42",
        "main": entry("x", "x**7-14*x**4-7*(t-3)*x**3+14*t*x**2-28*x+t**2-11*t+33"),
        "subfield": entry("y", CUBIC7_PRINTED, CUBIC7),
        "quadratic": {"kind": "poly", "factor": tpoly("-7"), "printed": "sqrt(-7)"},
        "aux": [],
        "prime": 7,
        "classes": [[-16, 49], [-11, 49], [-5, 49], [0, 49], [6, 49], [11, 49], [743, 2401]],
    },
    {
        "id": "T15",
        "description": "2^3 extension (degree 8, y) of the PGL(3,2) septic family (degree 7, x)",
        "group": "AGL3_2",
        "main": entry("y", "(y+1)*(y**7-y**6-11*y**5+y**4+41*y**3+25*y**2-34*y-29)-t*(2*y+3)**2"),
        "subfield": entry("x", "x**7-5*x**6-3*x**5+8*x**4+6*x**3-3*x**2-4*x-1+4*t*x**3*(x+1)"),
        "aux": [
            {"name": "pre_reduction_octic",
             **entry("z", "z**8-(36+16*t)*z**6+64*z**5+(96*t**2+336*t-42)*z**4+(128-256*t)*z**3-(256*t**3+960*t**2-16*t+68)*z**2+(1792*t-320)*z+(256*t**4+768*t**3-160*t**2-592*t+17)")},
            {"name": "discriminant_root", **entry("x", "6912*t**4-3456*t**3-95472*t**2+23976*t-1417")},
        ],
        "prime": 2,
        "classes": [],
    },
    {"id": "S3", "description": "apolar cyclic cubic unit generator", "group": "Z3",
     "main": entry("x", "x**3-t*x**2-(t+3)*x-1"), "subfield": None, "aux": [], "prime": None, "classes": [],
     "apolar": 3},
    {"id": "S4", "description": "apolar cyclic quartic unit generator", "group": "Z4",
     "main": entry("x", "x**4-t*x**3-6*x**2+t*x+1"), "subfield": None, "aux": [], "prime": None, "classes": [],
     "apolar": 4},
    {"id": "S6", "description": "apolar cyclic sextic unit generator (printed form repeats the x^3 term)", "group": "Z6",
     "main": entry("x", "x**6-2*t*x**5+5*(t-3)*x**3+20*x**3-5*t*x**2+2*(t-3)*x+1"), "subfield": None,
     "aux": [
         {"name": "variant_x4_first", **entry("x", "x**6-2*t*x**5+5*(t-3)*x**4+20*x**3-5*t*x**2+2*(t-3)*x+1")},
         {"name": "variant_x4_second", **entry("x", "x**6-2*t*x**5+5*(t-3)*x**3+20*x**4-5*t*x**2+2*(t-3)*x+1")},
     ],
     "prime": None, "classes": [], "apolar": 6, "flags": ["raw_duplicate_term"]},
    {"id": "G4", "description": "genus one cyclic quartic unit generator", "group": "Z4",
     "main": entry("x", "x**4-t**2*x**3-(t**3+2*t**2+4*t+2)*x**2-t**2*x+1"), "subfield": None, "aux": [],
     "prime": None, "classes": []},
    {"id": "G5", "description": "cyclic quintic unit generator of positive genus", "group": "Z5",
     "main": entry("x", "x**5-t**2*x**4-(t**3+6*t**2+10*t+10)*x**3-(t**4+5*t**3+11*t**2+15*t+5)*x**2+(t**3+4*t**2+10*t+10)*x-1"),
     "subfield": None, "aux": [], "prime": None, "classes": []},
    {"id": "G6", "description": "genus two cyclic sextic unit generator", "group": "Z6",
     "main": entry("x", "x**6-t*x**5-(t**2-5*t+12)*x**4+(t**3-4*t**2+10*t-2)*x**3-(t**3-6*t**2+17*t-21)*x**2-(t**2-3*t+6)*x-1"),
     "subfield": None, "aux": [], "prime": None, "classes": []},
    {"id": "C3", "description": "cyclic cubic subfield of the sextic unit generators", "group": "Z3",
     "main": entry("x", "x**3+t*x**2+(t-3)*x-1"), "subfield": None, "aux": [], "prime": None, "classes": []},
    {"id": "Q2P", "description": "quadratic unit family x^2-tx+1 (Chebyshev radicals)", "group": "Z2",
     "main": entry("x", "x**2-t*x+1"), "subfield": None, "aux": [], "prime": None, "classes": []},
    {"id": "Q2M", "description": "quadratic unit family x^2-tx-1 (Lucas radicals)", "group": "Z2",
     "main": entry("x", "x**2-t*x-1"), "subfield": None, "aux": [], "prime": None, "classes": []},
]

for f in families:
    f.setdefault("quadratic", None)
    f.setdefault("lucas", [])
    f.setdefault("newton_hint", None)
    f.setdefault("notes", [])
    f.setdefault("flags", [])
    f.setdefault("apolar", None)

doc = {"version": 1, "families": families}
out = pathlib.Path(__file__).resolve().parent.parent / "crates/core/fixtures/families.json"
data = json.dumps(doc, indent=1) + "\n"
out.write_text(data)
print(hashlib.sha256(data.encode()).hexdigest())
