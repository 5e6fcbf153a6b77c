#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "varsel/rng.hpp"

namespace varsel {

enum class ColumnKind { base, interaction, square, spurious };

const char* to_string(ColumnKind kind);

struct ColumnMeta {
  std::string name;
  ColumnKind kind = ColumnKind::base;
  bool is_binary = false;
  std::vector<std::string> parents;  // two for interactions, one for squares
};

// Response vector plus predictor matrix with column metadata.
struct Dataset {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  std::vector<ColumnMeta> columns;

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index m() const { return X.cols(); }

  // Checks size agreement, unique column names, and metadata invariants
  // (interaction => two distinct parents, square => one non-binary parent).
  void validate() const;
};

// Expands base (and spurious, treated as base) columns into the quadratic
// feature set: all inputs, then pairwise products in lexicographic parent
// order (by input position), then squares of the non-binary inputs in input
// order. Output size is b + C(b,2) + (b - #binary).
Dataset expand_quadratic(const Dataset& base);

// Appends k columns of i.i.d. standard normal draws (kind spurious). Draws
// are consumed column by column, each column top to bottom.
Dataset augment_spurious(const Dataset& base, int k, Rng& rng);

}  // namespace varsel
