#include <numeric>
#include <sstream>

#include "tomlink/groebner.hpp"

namespace tomlink {

MatrixOrder::MatrixOrder(int nvars, std::vector<std::vector<long>> rows, TieBreak tie, std::vector<int> priority)
    : nvars_(nvars), rows_(std::move(rows)), tie_(tie), priority_(std::move(priority)) {
  if (nvars_ < 0 || nvars_ > kMaxVars) throw AlgebraError("monomial order: bad variable count");
  if (static_cast<int>(rows_.size()) > kMaxOrderRows)
    throw AlgebraError("monomial order: at most " + std::to_string(kMaxOrderRows) + " weight rows");
  for (const auto& row : rows_)
    if (static_cast<int>(row.size()) != nvars_) throw AlgebraError("monomial order: row length mismatch");
  if (priority_.empty()) {
    priority_.resize(static_cast<std::size_t>(nvars_));
    std::iota(priority_.begin(), priority_.end(), 0);
  }
  if (static_cast<int>(priority_.size()) != nvars_) throw AlgebraError("monomial order: priority length mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(nvars_), false);
  for (int v : priority_) {
    if (v < 0 || v >= nvars_ || seen[static_cast<std::size_t>(v)])
      throw AlgebraError("monomial order: priority is not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
  // Well-ordering: the first nonzero weight of every variable must be positive.
  for (int v = 0; v < nvars_; ++v) {
    long first = 0;
    for (const auto& row : rows_)
      if (row[static_cast<std::size_t>(v)] != 0) {
        first = row[static_cast<std::size_t>(v)];
        break;
      }
    if (first < 0) throw AlgebraError("monomial order is not a well-order");
    if (first == 0 && tie_ == TieBreak::RevLex)
      throw AlgebraError("reverse lexicographic tie-break needs a positive weight row");
  }
}

MatrixOrder MatrixOrder::lex(int nvars) { return MatrixOrder(nvars, {}, TieBreak::Lex); }

MatrixOrder MatrixOrder::grevlex(int nvars) {
  return MatrixOrder(nvars, {std::vector<long>(static_cast<std::size_t>(nvars), 1)}, TieBreak::RevLex);
}

MatrixOrder MatrixOrder::weighted_grevlex(const std::vector<long>& weights) {
  return MatrixOrder(static_cast<int>(weights.size()), {weights}, TieBreak::RevLex);
}

MatrixOrder MatrixOrder::block(const std::vector<int>& block, const MatrixOrder& inner) {
  std::vector<long> ind(static_cast<std::size_t>(inner.nvars()), 0);
  for (int v : block) ind.at(static_cast<std::size_t>(v)) = 1;
  std::vector<std::vector<long>> rows{ind};
  for (const auto& r : inner.rows()) rows.push_back(r);
  return MatrixOrder(inner.nvars(), rows, inner.tie_break(), inner.priority());
}

OrderKey MatrixOrder::key(const Monomial& m) const {
  OrderKey k{};
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::int64_t s = 0;
    for (int v = 0; v < nvars_; ++v) s += rows_[r][static_cast<std::size_t>(v)] * m.e[static_cast<std::size_t>(v)];
    k[r] = s;
  }
  return k;
}

int MatrixOrder::compare(const OrderKey& ka, const Monomial& a, const OrderKey& kb, const Monomial& b) const {
  for (std::size_t r = 0; r < rows_.size(); ++r)
    if (ka[r] != kb[r]) return ka[r] > kb[r] ? 1 : -1;
  if (tie_ == TieBreak::Lex) {
    for (int v : priority_) {
      auto ea = a.e[static_cast<std::size_t>(v)], eb = b.e[static_cast<std::size_t>(v)];
      if (ea != eb) return ea > eb ? 1 : -1;
    }
  } else {
    for (auto it = priority_.rbegin(); it != priority_.rend(); ++it) {
      auto ea = a.e[static_cast<std::size_t>(*it)], eb = b.e[static_cast<std::size_t>(*it)];
      if (ea != eb) return ea < eb ? 1 : -1;
    }
  }
  return 0;
}

int MatrixOrder::compare(const Monomial& a, const Monomial& b) const { return compare(key(a), a, key(b), b); }

std::string MatrixOrder::describe() const {
  std::ostringstream os;
  for (const auto& row : rows_) {
    os << "[";
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "] ";
  }
  os << (tie_ == TieBreak::Lex ? "lex" : "revlex") << "(";
  for (std::size_t i = 0; i < priority_.size(); ++i) os << (i ? "," : "") << priority_[i];
  os << ")";
  return os.str();
}

}  // namespace tomlink
