#include "ucred/partition.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ucred/errors.hpp"

namespace ucred {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw ConfigError("partition has a negative part");
    if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1]) throw ConfigError("partition parts must be weakly decreasing");
  }
}

int Partition::weight() const {
  int w = 0;
  for (int x : parts_) w += x;
  return w;
}

Partition Partition::conjugate() const {
  std::vector<int> c(parts_.empty() ? 0 : parts_.front(), 0);
  for (int x : parts_)
    for (int j = 0; j < x; ++j) ++c[j];
  return Partition(std::move(c));
}

std::string Partition::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

bool MayaDiagram::contains(long x) const {
  return x <= offset || std::find(head.begin(), head.end(), x) != head.end();
}

MayaDiagram normalize_maya(long offset, std::vector<long> head) {
  std::sort(head.begin(), head.end(), std::greater<>());
  head.erase(std::unique(head.begin(), head.end()), head.end());
  head.erase(std::remove_if(head.begin(), head.end(), [offset](long x) { return x <= offset; }), head.end());
  // Absorb a run sitting directly on top of the offset.
  while (!head.empty() && head.back() == offset + 1) {
    ++offset;
    head.pop_back();
  }
  return MayaDiagram{offset, std::move(head)};
}

MayaDiagram maya_from_nu(const CoreIndex& nu, int L) {
  if (L < 2) throw ConfigError("L must be at least 2");
  if (static_cast<int>(nu.size()) != L) throw ConfigError("core index length does not match L");
  // Residue class j (1..L) contributes L*k + j for k < nu_j; its largest
  // element is L*(nu_j - 1) + j.
  long floor_all = 0;
  for (int j = 1; j <= L; ++j) {
    long top = static_cast<long>(L) * (nu[j - 1] - 1) + j;
    floor_all = j == 1 ? top : std::min(floor_all, top);
  }
  std::vector<long> head;
  for (int j = 1; j <= L; ++j) {
    long top = static_cast<long>(L) * (nu[j - 1] - 1) + j;
    for (long x = top; x > floor_all; x -= L) head.push_back(x);
  }
  return normalize_maya(floor_all, std::move(head));
}

Partition partition_from_maya(const MayaDiagram& m) {
  MayaDiagram c = normalize_maya(m.offset, m.head);
  long k = static_cast<long>(c.head.size());
  std::vector<int> parts;
  for (long i = 1; i <= k; ++i) parts.push_back(static_cast<int>(c.head[i - 1] - c.offset - k - 1 + i));
  return Partition(std::move(parts));
}

MayaDiagram maya_from_partition(const Partition& p) {
  std::vector<long> head;
  for (int i = 1; i <= p.length(); ++i) head.push_back(static_cast<long>(p(i)) - i);
  return normalize_maya(-static_cast<long>(p.length()) - 1, std::move(head));
}

Partition core_partition(const CoreIndex& nu) { return partition_from_maya(maya_from_nu(nu, static_cast<int>(nu.size()))); }

CoreIndex nu_shift(const CoreIndex& nu, int m) {
  int L = static_cast<int>(nu.size());
  if (L < 2) throw ConfigError("L must be at least 2");
  int q = m >= 0 ? m / L : -((-m + L - 1) / L);
  int r = m - q * L;
  CoreIndex out = nu;
  for (int j = 0; j < L; ++j) out[j] += q + (j < r ? 1 : 0);
  return out;
}

std::vector<int> hook_lengths(const Partition& p) {
  Partition c = p.conjugate();
  std::vector<int> out;
  for (int i = 1; i <= p.length(); ++i)
    for (int j = 1; j <= p(i); ++j) out.push_back(p(i) - j + c(j) - i + 1);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace ucred
