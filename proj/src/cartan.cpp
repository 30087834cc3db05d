#include "hypinv/cartan.hpp"

#include <limits>
#include <string>

#include "hypinv/errors.hpp"

namespace hypinv {

namespace {

using wide = __int128;

void require(int n) {
  if (n < 1) throw DomainError("n must be at least 1, got " + std::to_string(n));
}

std::int64_t narrow(wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw DomainError("value does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

// Exact quotient; the callers only divide products that are multiples.
wide exact(wide num, wide den) {
  if (num % den != 0) throw DomainError("non-integral intermediate value");
  return num / den;
}

}  // namespace

std::vector<std::int64_t> reduced_characters(int n) {
  require(n);
  wide N = n;
  std::vector<std::int64_t> s;
  for (int i = 1; i <= n + 1; ++i) s.push_back(narrow(exact((N + 1) * (N + 4), 2) - i));
  for (int j = 1; j <= n; ++j) s.push_back(narrow(exact((N + 1 - j) * (N + 2 - j), 2)));
  return s;
}

std::int64_t degree_of_indeterminacy(int n) {
  require(n);
  wide N = n;
  return narrow(exact((N + 1) * (N + 2) * (11 * N * N + 29 * N + 12), 24));
}

std::int64_t free_constant_count(int n) {
  require(n);
  wide N = n;
  wide tri = exact(N * (N + 1), 2);
  wide tet = exact(N * (N + 1) * (N + 2), 6);
  wide r = 1;
  r += exact(N * N * (N + 1), 2);
  r += N * N + N;
  r += tri;
  r += tet;
  r += N;
  r += tri;
  r += exact(N * N * (N + 1), 2);
  r += tet;
  r += exact(N * N * (N + 1) * (N + 1), 4);
  r += exact(N * N * (N + 1) * (N + 2), 6);
  r += exact(N * (N + 1) * (N + 2) * (N + 3), 24);
  return narrow(r);
}

std::int64_t weighted_character_sum(int n) {
  auto s = reduced_characters(n);
  wide sum = 0;
  for (std::size_t i = 0; i < s.size(); ++i) sum += static_cast<wide>(i + 1) * s[i];
  return narrow(sum);
}

bool cartan_test_identity(int n) { return degree_of_indeterminacy(n) == weighted_character_sum(n); }

CharacterTable character_table(int n) { return {n, reduced_characters(n), degree_of_indeterminacy(n)}; }

}  // namespace hypinv
