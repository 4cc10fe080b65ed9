"""Which orientation of the box complex relates D_3 and Y_3.

D_3 is the staircase of T(6,13), Y_3 the 25-generator summand of
C_3 x C_3, and B_3 the five-generator box complex. Each line reports
whether iota_K-local maps exist in both directions.
"""

from iotacx.equivalence import iota_k_local_map_search
from iotacx.involutive import dual, tensor_iota_k
from iotacx.knots import box_complex, dn, yn_fixture

y, d, b = yn_fixture(3), dn(3), box_complex(3)
pairs = {
    "D3 x B3        vs Y3": (tensor_iota_k(d, b), y),
    "D3 x dual(B3)  vs Y3": (tensor_iota_k(d, dual(b)), y),
    "Y3 x B3        vs D3": (tensor_iota_k(y, b), d),
    "dual(Y3) x D3  vs B3": (tensor_iota_k(dual(y), d), b),
    "B3             vs dual(B3)": (b, dual(b)),
}
for label, (p, q) in pairs.items():
    fwd = iota_k_local_map_search(p, q) is not None
    bwd = iota_k_local_map_search(q, p) is not None
    print(f"{label}: forward {'yes' if fwd else 'no '}  backward {'yes' if bwd else 'no '}")
