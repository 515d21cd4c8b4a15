#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace ucred {

class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
  // Trailing zeros are trimmed; throws ConfigError if not weakly decreasing
  // and nonnegative.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int weight() const;
  bool empty() const { return parts_.empty(); }
  // 1-based part access; zero beyond the length.
  int operator()(int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }
  Partition conjugate() const;
  std::string str() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

// Cofinite-below subset of Z: every integer <= offset belongs to it,
// offset + 1 does not, and `head` lists the finitely many elements above,
// strictly descending.
struct MayaDiagram {
  long offset = 0;
  std::vector<long> head;

  bool contains(long x) const;
  friend bool operator==(const MayaDiagram&, const MayaDiagram&) = default;
};

// Integer vector nu of length L >= 2.
using CoreIndex = std::vector<int>;

// Rebuilds the canonical (offset, head) form from an arbitrary set
// description {x <= offset} U head.
MayaDiagram normalize_maya(long offset, std::vector<long> head);

MayaDiagram maya_from_nu(const CoreIndex& nu, int L);
Partition partition_from_maya(const MayaDiagram& m);
// Charge-zero encoding m_i = lambda_i - i.
MayaDiagram maya_from_partition(const Partition& p);
Partition core_partition(const CoreIndex& nu);
// nu(m) = nu + (1^m, 0^{L-m}); extended to all integers m by
// nu(m + L) = nu(m) + (1, ..., 1).
CoreIndex nu_shift(const CoreIndex& nu, int m);

std::vector<int> hook_lengths(const Partition& p);

}  // namespace ucred
