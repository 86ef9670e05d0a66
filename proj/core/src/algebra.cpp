#include "wclone/algebra.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "wclone/errors.hpp"

namespace wclone {

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) return std::nullopt;
    out *= base;
  }
  return out;
}

void check_domain(int d) {
  if (d < 2) throw InvalidArgument("domain size must be at least 2, got " + std::to_string(d));
}

std::size_t tuple_count(int d, int arity) {
  check_domain(d);
  if (arity < 0) throw InvalidArgument("negative arity");
  const auto n = checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(arity));
  if (!n) throw CapExceeded("tuple count d^m", d, arity, 0, UINT64_MAX, true);
  return static_cast<std::size_t>(*n);
}

std::size_t tuple_index(std::span<const Label> t, int d) {
  std::size_t index = 0;
  for (Label x : t) {
    if (x < 0 || x >= d) {
      throw InvalidArgument("label " + std::to_string(x) + " outside domain of size " +
                            std::to_string(d));
    }
    index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(x);
  }
  return index;
}

Tuple index_tuple(std::size_t index, int arity, int d) {
  if (index >= tuple_count(d, arity)) {
    throw InvalidArgument("tuple index " + std::to_string(index) + " out of range for d=" +
                          std::to_string(d) + ", arity=" + std::to_string(arity));
  }
  Tuple t(static_cast<std::size_t>(arity));
  for (int i = arity - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<Label>(index % static_cast<std::size_t>(d));
    index /= static_cast<std::size_t>(d);
  }
  return t;
}

// ---------------------------------------------------------------------------

TupleMatrix::TupleMatrix(int d, std::vector<Tuple> columns) : d_(d), columns_(std::move(columns)) {
  check_domain(d);
  if (columns_.empty()) throw InvalidArgument("tuple matrix needs at least one column");
  height_ = columns_.front().size();
  for (const Tuple& c : columns_) {
    if (c.size() != height_) throw InvalidArgument("tuple matrix columns differ in arity");
    for (Label x : c) {
      if (x < 0 || x >= d) throw InvalidArgument("tuple matrix label outside domain");
    }
  }
}

Tuple TupleMatrix::row(std::size_t i) const {
  Tuple out;
  out.reserve(columns_.size());
  for (const Tuple& c : columns_) out.push_back(c.at(i));
  return out;
}

std::vector<Tuple> TupleMatrix::rows() const {
  std::vector<Tuple> out;
  out.reserve(height_);
  for (std::size_t i = 0; i < height_; ++i) out.push_back(row(i));
  return out;
}

// ---------------------------------------------------------------------------

Operation::Operation(int d, int arity, std::vector<Label> table)
    : d_(d), arity_(arity), table_(std::move(table)) {
  check_domain(d);
  if (arity < 1) throw InvalidArgument("operation arity must be at least 1");
  if (table_.size() != tuple_count(d, arity)) {
    throw InvalidArgument("operation table has length " + std::to_string(table_.size()) +
                          ", expected d^k = " + std::to_string(tuple_count(d, arity)));
  }
  for (Label x : table_) {
    if (x < 0 || x >= d) throw InvalidArgument("operation table entry outside domain");
  }
}

Label Operation::operator()(std::span<const Label> args) const {
  if (args.size() != static_cast<std::size_t>(arity_)) {
    throw InvalidArgument("operation applied to wrong number of arguments");
  }
  return table_[tuple_index(args, d_)];
}

std::optional<int> Operation::projection_index() const {
  const std::size_t d = static_cast<std::size_t>(d_);
  std::size_t stride = table_.size();
  for (int j = 0; j < arity_; ++j) {
    stride /= d;
    bool match = true;
    for (std::size_t i = 0; i < table_.size() && match; ++i) {
      match = static_cast<std::size_t>(table_[i]) == (i / stride) % d;
    }
    if (match) return j + 1;
  }
  return std::nullopt;
}

std::uint64_t Operation::code() const {
  if (!checked_pow(static_cast<std::uint64_t>(d_), table_.size())) {
    throw CapExceeded("operation code", d_, arity_, 0, UINT64_MAX, true);
  }
  std::uint64_t code = 0;
  for (Label x : table_) code = code * static_cast<std::uint64_t>(d_) + static_cast<std::uint64_t>(x);
  return code;
}

std::size_t OperationHash::operator()(const Operation& f) const noexcept {
  std::size_t h = static_cast<std::size_t>(f.arity()) * 0x9e3779b97f4a7c15ULL;
  for (Label x : f.table()) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
  return h;
}

Operation projection(int d, int k, int i) {
  if (k < 1 || i < 1 || i > k) {
    throw InvalidArgument("projection e_" + std::to_string(i) + "^(" + std::to_string(k) +
                          ") out of range");
  }
  const std::size_t n = tuple_count(d, k);
  std::vector<Label> table(n);
  const std::size_t stride = tuple_count(d, k - i);
  for (std::size_t t = 0; t < n; ++t) {
    table[t] = static_cast<Label>((t / stride) % static_cast<std::size_t>(d));
  }
  return Operation(d, k, std::move(table));
}

Operation constant_operation(int d, int k, Label value) {
  if (value < 0 || value >= d) throw InvalidArgument("constant outside domain");
  return Operation(d, k, std::vector<Label>(tuple_count(d, k), value));
}

Tuple apply(const Operation& f, const TupleMatrix& x) {
  if (x.width() != static_cast<std::size_t>(f.arity())) {
    throw InvalidArgument("apply: operation arity " + std::to_string(f.arity()) + " but " +
                          std::to_string(x.width()) + " columns");
  }
  if (x.domain() != f.domain()) throw InvalidArgument("apply: domain mismatch");
  Tuple out(x.height());
  const std::size_t d = static_cast<std::size_t>(f.domain());
  for (std::size_t i = 0; i < x.height(); ++i) {
    std::size_t index = 0;
    for (const Tuple& col : x.columns()) index = index * d + static_cast<std::size_t>(col[i]);
    out[i] = f.at(index);
  }
  return out;
}

Operation superpose(const Operation& f, std::span<const Operation> gs) {
  if (gs.size() != static_cast<std::size_t>(f.arity())) {
    throw InvalidArgument("superpose: expected " + std::to_string(f.arity()) + " operations, got " +
                          std::to_string(gs.size()));
  }
  const int ell = gs.front().arity();
  for (const Operation& g : gs) {
    if (g.arity() != ell) throw InvalidArgument("superpose: inner operations differ in arity");
    if (g.domain() != f.domain()) throw InvalidArgument("superpose: domain mismatch");
  }
  const std::size_t d = static_cast<std::size_t>(f.domain());
  const std::size_t n = gs.front().table().size();
  std::vector<Label> table(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t index = 0;
    for (const Operation& g : gs) index = index * d + static_cast<std::size_t>(g.at(t));
    table[t] = f.at(index);
  }
  return Operation(f.domain(), ell, std::move(table));
}

std::uint64_t operation_count(int d, int k, const Limits& limits) {
  check_domain(d);
  if (k < 1) throw InvalidArgument("operation arity must be at least 1");
  const auto inputs = checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(k));
  const auto count = inputs ? checked_pow(static_cast<std::uint64_t>(d), *inputs) : std::nullopt;
  if (!count) throw CapExceeded("operation enumeration d^(d^k)", d, k, 0, limits.op_cap, true);
  if (*count > limits.op_cap) {
    throw CapExceeded("operation enumeration d^(d^k)", d, k, *count, limits.op_cap);
  }
  return *count;
}

void for_each_operation(int d, int k, const Limits& limits,
                        const std::function<void(const Operation&)>& visit) {
  const std::uint64_t count = operation_count(d, k, limits);
  const std::size_t n = tuple_count(d, k);
  std::vector<Label> table(n, 0);
  for (std::uint64_t c = 0; c < count; ++c) {
    visit(Operation(d, k, table));
    for (std::size_t i = n; i-- > 0;) {
      if (++table[i] < d) break;
      table[i] = 0;
    }
  }
}

std::vector<Operation> enumerate_ops(int d, int k, const Limits& limits) {
  std::vector<Operation> out;
  out.reserve(static_cast<std::size_t>(operation_count(d, k, limits)));
  for_each_operation(d, k, limits, [&](const Operation& f) { out.push_back(f); });
  return out;
}

// ---------------------------------------------------------------------------

OperationSet::OperationSet(int d) : d_(d) { check_domain(d); }

bool OperationSet::insert(Operation f) {
  if (f.domain() != d_) throw InvalidArgument("operation set domain mismatch");
  const int k = f.arity();
  return by_arity_[k].insert(std::move(f)).second;
}

bool OperationSet::contains(const Operation& f) const {
  const auto it = by_arity_.find(f.arity());
  return it != by_arity_.end() && it->second.count(f) != 0;
}

std::size_t OperationSet::size() const {
  std::size_t n = 0;
  for (const auto& [k, ops] : by_arity_) n += ops.size();
  return n;
}

std::vector<int> OperationSet::arities() const {
  std::vector<int> out;
  for (const auto& [k, ops] : by_arity_) {
    if (!ops.empty()) out.push_back(k);
  }
  return out;
}

std::vector<Operation> OperationSet::of_arity(int k) const {
  const auto it = by_arity_.find(k);
  if (it == by_arity_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::vector<Operation> OperationSet::all() const {
  std::vector<Operation> out;
  for (const auto& [k, ops] : by_arity_) out.insert(out.end(), ops.begin(), ops.end());
  return out;
}

bool OperationSet::includes(const OperationSet& other) const {
  for (const Operation& f : other.all()) {
    if (!contains(f)) return false;
  }
  return true;
}

namespace {

bool advance(std::vector<std::size_t>& pick, std::size_t bound) {
  for (std::size_t j = pick.size(); j-- > 0;) {
    if (++pick[j] < bound) return true;
    pick[j] = 0;
  }
  return false;
}

}  // namespace

std::vector<Operation> clone_part(const OperationSet& generators, int n, const Limits& limits) {
  const int d = generators.domain();
  if (n < 1) throw InvalidArgument("clone part arity must be at least 1");
  const std::size_t width = tuple_count(d, n);
  const std::vector<Operation> gens = generators.all();

  std::vector<Operation> members;
  std::unordered_set<Operation, OperationHash> seen;
  for (int i = 1; i <= n; ++i) {
    Operation e = projection(d, n, i);
    if (seen.insert(e).second) members.push_back(std::move(e));
  }

  // Semi-naive saturation: each round only combines tuples that involve at
  // least one member discovered in the previous round.
  std::size_t fresh_from = 0;
  while (fresh_from < members.size()) {
    const std::size_t current = members.size();
    for (const Operation& g : gens) {
      const std::size_t a = static_cast<std::size_t>(g.arity());
      std::vector<std::size_t> pick(a, 0);
      while (true) {
        if (*std::max_element(pick.begin(), pick.end()) >= fresh_from) {
          std::vector<Label> table(width);
          for (std::size_t t = 0; t < width; ++t) {
            std::size_t index = 0;
            for (std::size_t j = 0; j < a; ++j) {
              index = index * static_cast<std::size_t>(d) +
                      static_cast<std::size_t>(members[pick[j]].at(t));
            }
            table[t] = g.at(index);
          }
          Operation h(d, n, std::move(table));
          if (seen.insert(h).second) {
            members.push_back(std::move(h));
            if (members.size() > limits.op_cap) {
              throw CapExceeded("clone part size", d, n, members.size(), limits.op_cap);
            }
          }
        }
        if (!advance(pick, current)) break;
      }
    }
    fresh_from = current;
  }
  std::sort(members.begin(), members.end());
  return members;
}

OperationSet clone_closure(const OperationSet& generators, int max_arity, const Limits& limits) {
  if (max_arity < 1) throw InvalidArgument("max_arity must be at least 1");
  OperationSet out(generators.domain());
  for (int n = 1; n <= max_arity; ++n) {
    for (Operation& f : clone_part(generators, n, limits)) out.insert(std::move(f));
  }
  return out;
}

}  // namespace wclone
