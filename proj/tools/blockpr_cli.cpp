#include "blockpr/experiments.hpp"
#include <iostream>
int main() { std::cout << "stub\n"; }
