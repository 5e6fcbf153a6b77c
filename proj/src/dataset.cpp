#include "varsel/dataset.hpp"

#include <set>
#include <string>

#include "varsel/errors.hpp"

namespace varsel {

const char* to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::base: return "base";
    case ColumnKind::interaction: return "interaction";
    case ColumnKind::square: return "square";
    case ColumnKind::spurious: return "spurious";
  }
  return "?";
}

void Dataset::validate() const {
  if (y.size() != X.rows())
    throw DataError("dataset: response length " + std::to_string(y.size()) +
                    " != case count " + std::to_string(X.rows()));
  if (static_cast<Eigen::Index>(columns.size()) != X.cols())
    throw DataError("dataset: " + std::to_string(columns.size()) +
                    " column descriptors for " + std::to_string(X.cols()) +
                    " columns");
  std::set<std::string> names;
  for (const auto& c : columns) {
    if (!names.insert(c.name).second)
      throw DataError("dataset: duplicate column name '" + c.name + "'");
    switch (c.kind) {
      case ColumnKind::interaction:
        if (c.parents.size() != 2 || c.parents[0] == c.parents[1])
          throw DataError("dataset: interaction '" + c.name +
                          "' needs two distinct parents");
        break;
      case ColumnKind::square:
        if (c.parents.size() != 1)
          throw DataError("dataset: square '" + c.name + "' needs one parent");
        break;
      default:
        break;
    }
  }
}

Dataset expand_quadratic(const Dataset& base) {
  base.validate();
  const Eigen::Index b = base.m();
  if (b < 1) throw DataError("expand_quadratic: need at least one column");
  for (const auto& c : base.columns)
    if (c.kind != ColumnKind::base && c.kind != ColumnKind::spurious)
      throw DataError("expand_quadratic: column '" + c.name +
                      "' is already derived (" + to_string(c.kind) + ")");

  Eigen::Index n_binary = 0;
  for (const auto& c : base.columns) n_binary += c.is_binary ? 1 : 0;
  const Eigen::Index total = b + b * (b - 1) / 2 + (b - n_binary);

  Dataset out;
  out.y = base.y;
  out.X.resize(base.n(), total);
  out.columns.reserve(static_cast<std::size_t>(total));

  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < b; ++i, ++col) {
    out.X.col(col) = base.X.col(i);
    out.columns.push_back(base.columns[static_cast<std::size_t>(i)]);
  }
  for (Eigen::Index i = 0; i < b; ++i) {
    for (Eigen::Index j = i + 1; j < b; ++j, ++col) {
      const auto& ci = base.columns[static_cast<std::size_t>(i)];
      const auto& cj = base.columns[static_cast<std::size_t>(j)];
      out.X.col(col) = base.X.col(i).cwiseProduct(base.X.col(j));
      out.columns.push_back({ci.name + "*" + cj.name, ColumnKind::interaction,
                             false, {ci.name, cj.name}});
    }
  }
  for (Eigen::Index i = 0; i < b; ++i) {
    const auto& ci = base.columns[static_cast<std::size_t>(i)];
    if (ci.is_binary) continue;
    out.X.col(col) = base.X.col(i).cwiseAbs2();
    out.columns.push_back({ci.name + "^2", ColumnKind::square, false, {ci.name}});
    ++col;
  }
  out.validate();
  return out;
}

Dataset augment_spurious(const Dataset& base, int k, Rng& rng) {
  if (k < 0) throw ConfigError("augment_spurious: k must be >= 0");
  if (k == 0) return base;
  Dataset out;
  out.y = base.y;
  out.X.resize(base.n(), base.m() + k);
  out.X.leftCols(base.m()) = base.X;
  out.columns = base.columns;
  for (int j = 0; j < k; ++j) {
    const Eigen::Index col = base.m() + j;
    for (Eigen::Index i = 0; i < base.n(); ++i) out.X(i, col) = rng.normal();
    out.columns.push_back({"noise" + std::to_string(j + 1),
                           ColumnKind::spurious, false, {}});
  }
  out.validate();
  return out;
}

}  // namespace varsel
