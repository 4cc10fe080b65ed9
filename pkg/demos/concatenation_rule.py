"""Sums of C(n) classes: the concatenation rule against brute-force search."""

from iotacx.equivalence import SearchBounds, standard_rep_search
from iotacx.group import SignedCnTerm, independence_report, sf_member, simplified_sum_params, tensor_of_terms

for text in (["+3", "+2"], ["+3", "-2"], ["-4", "+2"], ["+2", "-2"]):
    terms = [SignedCnTerm.parse(t) for t in text]
    rule = simplified_sum_params(terms)
    search = standard_rep_search(tensor_of_terms(terms), SearchBounds(4, 4))
    print(f"{' '.join(text):8} rule ({rule})  search ({search})  SF: {sf_member(rule)}")

print(independence_report([2, 4, 6], 1).summary())
