#pragma once

// Tuples and operations over the finite domain {0, ..., d-1}.
//
// Every table in the library is laid out by lexicographic tuple index with the
// leftmost coordinate most significant, so an operation's table doubles as
// the image f(Z) of the sequence Z of all its input tuples.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace wclone {

using Label = int;
using Tuple = std::vector<Label>;

/// Resource caps shared by every enumerating routine.
struct Limits {
  /// Bound on d^(d^k) operation enumerations and on enumerated set sizes.
  std::uint64_t op_cap = std::uint64_t{1} << 16;
  /// Bound on d^n assignment enumerations.
  std::uint64_t assignment_cap = std::uint64_t{1} << 20;
};

/// base^exp, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp);

/// Throws InvalidArgument unless d >= 2.
void check_domain(int d);

/// d^arity. Throws CapExceeded if it does not fit in 64 bits.
std::size_t tuple_count(int d, int arity);

std::size_t tuple_index(std::span<const Label> t, int d);
Tuple index_tuple(std::size_t index, int arity, int d);

/// A sequence of k m-tuples x_1..x_k (the columns). Row i of the transposed
/// view is the k-tuple (x_1[i], ..., x_k[i]).
class TupleMatrix {
 public:
  TupleMatrix() = default;
  TupleMatrix(int d, std::vector<Tuple> columns);

  int domain() const { return d_; }
  std::size_t width() const { return columns_.size(); }
  std::size_t height() const { return height_; }
  const std::vector<Tuple>& columns() const { return columns_; }
  const Tuple& column(std::size_t i) const { return columns_.at(i); }
  Tuple row(std::size_t i) const;
  std::vector<Tuple> rows() const;

  friend bool operator==(const TupleMatrix&, const TupleMatrix&) = default;

 private:
  int d_ = 2;
  std::size_t height_ = 0;
  std::vector<Tuple> columns_;
};

class Operation {
 public:
  Operation(int d, int arity, std::vector<Label> table);

  int domain() const { return d_; }
  int arity() const { return arity_; }
  const std::vector<Label>& table() const { return table_; }

  Label at(std::size_t index) const { return table_[index]; }
  Label operator()(std::span<const Label> args) const;

  /// 1-based i when this is e_i^(k).
  std::optional<int> projection_index() const;
  bool is_projection() const { return projection_index().has_value(); }

  /// Position of this operation in enumerate_ops order.
  std::uint64_t code() const;

  // Member order gives the canonical ordering: arity first, then table.
  friend std::strong_ordering operator<=>(const Operation&, const Operation&) = default;
  friend bool operator==(const Operation&, const Operation&) = default;

 private:
  int d_;
  int arity_;
  std::vector<Label> table_;
};

struct OperationHash {
  std::size_t operator()(const Operation& f) const noexcept;
};

/// e_i^(k); i is 1-based.
Operation projection(int d, int k, int i);
Operation constant_operation(int d, int k, Label value);

/// Coordinatewise application f(x_1, ..., x_k).
Tuple apply(const Operation& f, const TupleMatrix& x);

/// f[g_1, ..., g_k].
Operation superpose(const Operation& f, std::span<const Operation> gs);

/// d^(d^k). Throws CapExceeded if above limits.op_cap.
std::uint64_t operation_count(int d, int k, const Limits& limits = {});

/// All k-ary operations in table-lexicographic order.
std::vector<Operation> enumerate_ops(int d, int k, const Limits& limits = {});
void for_each_operation(int d, int k, const Limits& limits,
                        const std::function<void(const Operation&)>& visit);

/// Operations over one domain, grouped by arity, canonically ordered.
class OperationSet {
 public:
  explicit OperationSet(int d);

  int domain() const { return d_; }
  bool insert(Operation f);
  bool contains(const Operation& f) const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<int> arities() const;
  std::vector<Operation> of_arity(int k) const;
  std::vector<Operation> all() const;
  bool includes(const OperationSet& other) const;

  friend bool operator==(const OperationSet&, const OperationSet&) = default;

 private:
  int d_;
  std::map<int, std::set<Operation>> by_arity_;
};

/// Smallest set containing the generators and all projections of arity
/// <= max_arity that is closed under superposition, restricted to arities
/// <= max_arity. Each n-ary part is generated as the subuniverse of D^(d^n)
/// spanned by the n projections, which equals the n-ary part of the full
/// clone generated by the generators.
OperationSet clone_closure(const OperationSet& generators, int max_arity,
                           const Limits& limits = {});

/// The n-ary part of the clone generated by `generators`.
std::vector<Operation> clone_part(const OperationSet& generators, int n,
                                  const Limits& limits = {});

}  // namespace wclone
