// placeholder, full CLI arrives with the remaining modules
#include "nilcpa/catalog.hpp"

int main() { return 0; }
