"""From the box complex to a standard representative and an SF verdict.

For odd n the A0 complex of (box complex x trefoil) has fifteen generators.
Its almost-local class is found by searching over standard complexes, and
the answer C(+,-1,+,-(n-1)) fails the Seifert-fibered image conditions.
"""

from iotacx.chain import cancel_reduce
from iotacx.equivalence import SearchBounds, standard_rep_search
from iotacx.group import sf_member
from iotacx.involutive import verify_involution
from iotacx.knots import en_complex

for n in (3, 5, 7):
    e = en_complex(n)
    reduced, _ = cancel_reduce(e.complex, [e.iota])
    rep = standard_rep_search(e, SearchBounds(3, n), report=True)
    print(f"n = {n}: {e.n} generators, {reduced.n} after cancellation, involution ok: {bool(verify_involution(e))}")
    print(f"  standard representative ({rep.params}) after {rep.solves} local-map solves")
    print(f"  in the SF image: {sf_member(rep.params)}")
