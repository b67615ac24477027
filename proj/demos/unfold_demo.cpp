// Splits a rank-2 pole-order-4 normal form into two order-2 local forms and
// prints the exact data.
#include <iostream>

#include "htl/htl.hpp"

using namespace htl;

int main() {
    auto q = [](long v) { return GaussianRational(v); };
    HTLForm h = HTLForm::semisimple(2, 3, {{q(0), q(0)}, {q(1), q(2)}, {q(3), q(4)}, {q(1), q(-1)}});
    UnfoldParams c({q(0), q(0), q(1), q(1)});

    std::cout << "membership: " << (dh_membership(h, c).member ? "yes" : "no") << "\n";
    std::cout << "stratum: " << classify_point(c.c).str() << "\n";
    for (const auto& lf : local_forms(h, c)) {
        std::cout << "pole " << lf.point << ", order " << lf.form.k + 1 << ", diagonals:";
        for (const auto& diag : lf.form.S) {
            std::cout << " (";
            for (size_t i = 0; i < diag.size(); ++i) std::cout << (i ? "," : "") << diag[i];
            std::cout << ")";
        }
        std::cout << "\n";
    }
    return 0;
}
