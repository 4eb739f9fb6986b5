#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cosetmac {

using VarMask = std::uint32_t;

// Dense joint pmf over named finite alphabets. Index layout is row-major with
// the first variable most significant. All entropies are base 2.
class JointPmf {
 public:
  struct Var {
    std::string name;
    int size;
  };

  static constexpr std::size_t kMaxCells = 10'000'000;

  JointPmf() = default;
  // Validates nonnegativity and unit total (1e-12 allowance on the sum).
  static JointPmf from_table(std::vector<Var> vars, std::vector<double> table);
  // Builder that normalization-checks lazily; used internally while filling.
  static JointPmf zeros(std::vector<Var> vars);

  int var_count() const { return static_cast<int>(vars_.size()); }
  const Var& var(int i) const { return vars_[i]; }
  int var_index(const std::string& name) const;  // -1 if absent
  VarMask mask_of(const std::vector<std::string>& names) const;
  std::size_t cells() const { return table_.size(); }

  double& at_flat(std::size_t i) { return table_[i]; }
  double at_flat(std::size_t i) const { return table_[i]; }
  std::size_t flat_index(const std::vector<int>& idx) const;
  void unflatten(std::size_t flat, std::vector<int>& idx) const;

  void validate() const;  // throws on negative entries or sum far from 1

  JointPmf marginal(VarMask keep) const;

  // Marginal over `keep` extended with one derived variable computed from the
  // full index tuple. Used for field/group sums and coset labels.
  JointPmf derived(VarMask keep, const std::string& name, int size,
                   const std::function<int(const std::vector<int>&)>& fn) const;

  double entropy(VarMask vars) const;
  double conditional_entropy(VarMask a, VarMask b) const;       // H(A|B)
  double mutual_information(VarMask a, VarMask b) const;        // I(A;B)
  double conditional_mi(VarMask a, VarMask b, VarMask c) const;  // I(A;B|C)

  double expect(const std::function<double(const std::vector<int>&)>& fn) const;

 private:
  std::vector<Var> vars_;
  std::vector<double> table_;
};

double binary_entropy(double x);

// -sum p log2 p with 0 log 0 = 0
double entropy_of(const std::vector<double>& p);

}  // namespace cosetmac
