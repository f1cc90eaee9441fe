#include "msca/subset.hpp"

namespace msca {

std::vector<int> subset_elements(Subset s) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(s.count()));
    for (std::uint32_t bits = s.bits; bits != 0; bits &= bits - 1)
        out.push_back(std::countr_zero(bits));
    return out;
}

Subset subset_from_elements(const std::vector<int>& elements, int n) {
    Subset s;
    for (int e : elements) {
        if (e < 0 || e >= n)
            throw ContractViolation("element " + std::to_string(e) +
                                    " outside ground set of size " + std::to_string(n));
        s = s | Subset::single(e);
    }
    return s;
}

std::string render_subset(Subset s) {
    std::string out = "{";
    bool first = true;
    for (int e : subset_elements(s)) {
        if (!first)
            out += ",";
        first = false;
        out += std::to_string(e);
    }
    return out + "}";
}

}  // namespace msca
