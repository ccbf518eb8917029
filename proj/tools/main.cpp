#include <cstdio>

int main() {
  std::puts("padlab (placeholder)");
  return 0;
}
