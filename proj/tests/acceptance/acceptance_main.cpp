// Runs every acceptance criterion at full level and prints one line per
// criterion. Exit status is nonzero when any criterion fails.

#include <iostream>

#include "tdho/validation.hpp"

int main()
{
    tdho::validation::Options opt;
    opt.level = tdho::validation::Level::full;
    const auto results = tdho::validation::run_all(opt);
    tdho::validation::print_report(results, std::cout);
    const bool ok = tdho::validation::all_passed(results);
    std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << '\n';
    return ok ? 0 : 1;
}
