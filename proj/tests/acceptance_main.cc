#include <iostream>

#include "lgsim/acceptance.h"

int main() {
    const auto results = lgsim::run_acceptance_suite();
    lgsim::print_acceptance_report(std::cout, results);
    return lgsim::all_passed(results) ? 0 : 1;
}
