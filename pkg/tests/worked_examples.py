"""The thirteen worked examples: group, form (a, b, c) and printed discriminant."""

EXAMPLES = [
    ("SO2", ("1+y^2-x^2+2*x*y", "x^2-y^2+2*x*y", "1+x^2-y^2-2*x*y"), "2*(x^2+y^2)^2-1"),
    ("O2", ("y^2-x^2", "2*x*y", "x^2-y^2"), "(x^2+y^2)^2"),
    ("O2[SO2]", ("2*x*y", "x^2-y^2", "-2*x*y"), "(x^2+y^2)^2"),
    ("Z5", ("1+y^2-x^2-3*x^2*y+y^3", "2*x*y+x^3-3*x*y^2", "1+x^2-y^2+3*x^2*y-y^3"),
     "(x^2+y^2)^3+10*x^4*y-20*x^2*y^3+2*y^5+(x^2+y^2)^2-1"),
    ("Z4[Z2]", ("-x^4+6*x^2*y^2-y^4+4*x^3*y-4*x*y^3", "x^4-6*x^2*y^2+y^4+4*x^3*y-4*x*y^3",
                "x^4-6*x^2*y^2+y^4-4*x^3*y+4*x*y^3"), "2*(x^2+y^2)^4"),
    ("D5", ("1+y^2-x^2-x^3+3*x*y^2", "2*x*y-3*x^2*y+y^3", "1-y^2+x^2+x^3-3*x*y^2"),
     "(x^2+y^2)^3+2*x^5-20*x^3*y^2+10*x*y^4+(x^2+y^2)^2-1"),
    ("D6[Z6]", ("2*x*y-4*x^3*y+4*x*y^3", "x^2-y^2+x^4-6*x^2*y^2+y^4", "-2*x*y+4*x^3*y-4*x*y^3"),
     "(x^2+y^2)^4+2*x^6-30*x^4*y^2+30*x^2*y^4+2*y^6+(x^2+y^2)^2"),
    ("D6[D3(kx)]", ("-x", "-y", "x"), "x^2+y^2"),
    ("Z2", ("1", "y", "1"), "y^2-1"),
    ("Z2[1]", ("y", "1", "-y"), "y^2+1"),
    ("Z2xZ2", ("1", "x*y", "-1"), "x^2*y^2+1"),
    ("Z2xZ2[Z2(-I)]", ("x*y", "1", "-x*y"), "x^2*y^2+1"),
    ("Z2xZ2[Z2(kx)]", ("x", "y^3", "-x"), "x^2+y^6"),
]
