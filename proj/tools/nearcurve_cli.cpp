#include "nearcurve/form.hpp"
#include <cstdio>
int main() { std::puts("nearcurve cli placeholder"); return 0; }
