#include <cstdio>

int main() {
  std::puts("tomokit: cli under construction");
  return 0;
}
