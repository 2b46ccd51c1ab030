#include <iostream>

#include "srff/acceptance.hpp"

int main() {
    const auto results = srff::acceptance::run_all(std::cout);
    return srff::acceptance::all_passed(results) ? 0 : 3;
}
