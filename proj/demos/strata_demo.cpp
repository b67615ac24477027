// Prints the partition poset of {0,...,k} with its covering relations.
#include <iostream>

#include "htl/htl.hpp"

int main(int argc, char** argv) {
    int k = argc > 1 ? std::atoi(argv[1]) : 3;
    auto poset = htl::stratify(k);
    std::cout << poset.partitions.size() << " strata\n";
    for (const auto& [finer, coarser] : poset.hasse_edges)
        std::cout << poset.partitions[static_cast<size_t>(finer)].str() << " -> "
                  << poset.partitions[static_cast<size_t>(coarser)].str() << "\n";
    return 0;
}
