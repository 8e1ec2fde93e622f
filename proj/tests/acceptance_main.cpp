#include <iostream>

#include "pathint/acceptance.hpp"

int main() {
    int failures = pathint::run_acceptance(std::cout);
    if (failures) std::cout << failures << " criteria failed\n";
    return failures == 0 ? 0 : 1;
}
