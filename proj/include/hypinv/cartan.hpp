#pragma once

#include <cstdint>
#include <vector>

namespace hypinv {

struct CharacterTable {
  int n = 1;
  /// s'_1 ... s'_{2n+1}.
  std::vector<std::int64_t> characters;
  std::int64_t r1 = 0;
};

/// s'_i = (n+1)(n+4)/2 - i for i = 1..n+1 and s'_{n+1+j} = (n+1-j)(n+2-j)/2
/// for j = 1..n. Throws DomainError for n < 1.
std::vector<std::int64_t> reduced_characters(int n);

/// (n+1)(n+2)(11n^2 + 29n + 12)/24.
std::int64_t degree_of_indeterminacy(int n);

/// Term-by-term count of the free constants of the prolonged coframe.
std::int64_t free_constant_count(int n);

/// Sum of i * s'_i.
std::int64_t weighted_character_sum(int n);

/// degree_of_indeterminacy(n) == weighted_character_sum(n).
bool cartan_test_identity(int n);

CharacterTable character_table(int n);

}  // namespace hypinv
