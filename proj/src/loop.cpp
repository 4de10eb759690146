#include "mloop/loop.hpp"

#include <mutex>
#include <sstream>

#include "mloop/error.hpp"

namespace mloop {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::NotLatinSquare: return "NotLatinSquare";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::CrossLoop: return "CrossLoop";
    case ErrorKind::OrderOverflow: return "OrderOverflow";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::NotCML: return "NotCML";
    case ErrorKind::NotASubloop: return "NotASubloop";
    case ErrorKind::TrivialLoop: return "TrivialLoop";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::NotSubgroup: return "NotSubgroup";
    case ErrorKind::ChainStalled: return "ChainStalled";
    case ErrorKind::NotCommutative: return "NotCommutative";
    case ErrorKind::BadGeneratorSpec: return "BadGeneratorSpec";
  }
  return "Unknown";
}

namespace detail {

struct LoopData {
  std::size_t n = 0;
  std::vector<Index> table;
  std::vector<Index> inverse;
  std::vector<Index> ldiv;  // ldiv[a*n + b] = a\b
  std::string name;

  mutable std::once_flag laws_once;
  mutable bool cml = false;
  mutable bool commutative = false;
};

}  // namespace detail

namespace {

// First Latin-square or identity-law failure, if any.
std::optional<Error> check_loop_laws(std::size_t n, std::span<const Index> t) {
  std::vector<std::size_t> seen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), n);
    for (std::size_t j = 0; j < n; ++j) {
      const Index v = t[i * n + j];
      if (v >= n) {
        std::ostringstream os;
        os << "row=" << i << " column=" << j << " value=" << v << " out of range";
        return Error(ErrorKind::NotLatinSquare, os.str());
      }
      if (seen[v] != n) {
        std::ostringstream os;
        os << "row=" << i << " value=" << v << " columns=" << seen[v] << "," << j;
        return Error(ErrorKind::NotLatinSquare, os.str());
      }
      seen[v] = j;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), n);
    for (std::size_t i = 0; i < n; ++i) {
      const Index v = t[i * n + j];
      if (seen[v] != n) {
        std::ostringstream os;
        os << "column=" << j << " value=" << v << " rows=" << seen[v] << "," << i;
        return Error(ErrorKind::NotLatinSquare, os.str());
      }
      seen[v] = i;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i] != i || t[i * n] != i) {
      std::ostringstream os;
      os << "element 0 fails the identity law at " << i;
      return Error(ErrorKind::NoIdentity, os.str());
    }
  }
  return std::nullopt;
}

}  // namespace

CayleyLoop CayleyLoop::from_table(std::size_t order, std::vector<Index> table, std::string name,
                                  const Limits& limits) {
  if (order == 0) throw Error(ErrorKind::BadDimension, "order must be positive");
  if (order > limits.max_order) {
    throw Error(ErrorKind::OrderOverflow, "max-order guard: order " + std::to_string(order) +
                                              " exceeds " + std::to_string(limits.max_order));
  }
  if (table.size() != order * order) {
    throw Error(ErrorKind::BadDimension, "table has " + std::to_string(table.size()) +
                                             " entries, expected " + std::to_string(order * order));
  }
  if (auto err = check_loop_laws(order, table)) throw *err;

  auto data = std::make_shared<detail::LoopData>();
  data->n = order;
  data->table = std::move(table);
  data->name = std::move(name);
  data->inverse.resize(order);
  data->ldiv.resize(order * order);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t x = 0; x < order; ++x) {
      const Index b = data->table[a * order + x];
      data->ldiv[a * order + b] = static_cast<Index>(x);
      if (b == 0) data->inverse[a] = static_cast<Index>(x);
    }
  }
  return CayleyLoop(std::move(data));
}

std::size_t CayleyLoop::order() const noexcept { return data_->n; }
const std::string& CayleyLoop::name() const noexcept { return data_->name; }
std::span<const Index> CayleyLoop::table() const noexcept { return data_->table; }

std::span<const Index> CayleyLoop::row(Index a) const noexcept {
  return std::span<const Index>(data_->table).subspan(a * data_->n, data_->n);
}

Index CayleyLoop::mul(Index a, Index b) const noexcept { return data_->table[a * data_->n + b]; }
Index CayleyLoop::inv(Index a) const noexcept { return data_->inverse[a]; }
Index CayleyLoop::left_div(Index a, Index b) const noexcept {
  return data_->ldiv[a * data_->n + b];
}

Index CayleyLoop::associator(Index a, Index b, Index c) const noexcept {
  return left_div(mul(a, mul(b, c)), mul(mul(a, b), c));
}

std::size_t CayleyLoop::element_order(Index a) const noexcept {
  std::size_t k = 1;
  for (Index x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

Index CayleyLoop::pow(Index a, long long k) const noexcept {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  const auto ord = static_cast<long long>(element_order(a));
  k %= ord;
  Index r = 0;
  for (long long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

namespace {

void compute_laws(const detail::LoopData& d) {
  const std::size_t n = d.n;
  const auto& t = d.table;
  bool comm = true;
  for (std::size_t i = 0; i < n && comm; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (t[i * n + j] != t[j * n + i]) {
        comm = false;
        break;
      }
  bool cml = comm;
  for (std::size_t x = 0; x < n && cml; ++x) {
    const std::size_t xx = t[x * n + x];
    for (std::size_t y = 0; y < n && cml; ++y) {
      const std::size_t xy = t[x * n + y];
      for (std::size_t z = 0; z < n; ++z) {
        if (t[xx * n + t[y * n + z]] != t[xy * n + t[x * n + z]]) {
          cml = false;
          break;
        }
      }
    }
  }
  d.commutative = comm;
  d.cml = cml;
}

}  // namespace

bool CayleyLoop::is_cml() const {
  std::call_once(data_->laws_once, [this] { compute_laws(*data_); });
  return data_->cml;
}

bool CayleyLoop::is_commutative() const {
  std::call_once(data_->laws_once, [this] { compute_laws(*data_); });
  return data_->commutative;
}

LoopElement CayleyLoop::element(Index i) const { return LoopElement(*this, i); }

CayleyLoop CayleyLoop::renamed(std::string name) const {
  auto data = std::make_shared<detail::LoopData>();
  data->n = data_->n;
  data->table = data_->table;
  data->inverse = data_->inverse;
  data->ldiv = data_->ldiv;
  data->name = std::move(name);
  return CayleyLoop(std::move(data));
}

bool operator==(const CayleyLoop& a, const CayleyLoop& b) {
  return a.data_ == b.data_ || (a.order() == b.order() && a.data_->table == b.data_->table);
}

LoopElement::LoopElement(const CayleyLoop& loop, Index index) : loop_(loop), index_(index) {
  if (index >= loop.order()) {
    throw Error(ErrorKind::BadDimension, "element index " + std::to_string(index) +
                                             " out of range for order " +
                                             std::to_string(loop.order()));
  }
}

namespace {

void require_same(const LoopElement& a, const LoopElement& b) {
  if (!a.loop().same_as(b.loop()))
    throw Error(ErrorKind::CrossLoop, "operands belong to different loops");
}

}  // namespace

LoopElement mul(const LoopElement& a, const LoopElement& b) {
  require_same(a, b);
  return LoopElement(a.loop(), a.loop().mul(a.index(), b.index()));
}

LoopElement inv(const LoopElement& a) { return LoopElement(a.loop(), a.loop().inv(a.index())); }

LoopElement pow(const LoopElement& a, long long k) {
  return LoopElement(a.loop(), a.loop().pow(a.index(), k));
}

LoopElement associator(const LoopElement& a, const LoopElement& b, const LoopElement& c) {
  require_same(a, b);
  require_same(a, c);
  return LoopElement(a.loop(), a.loop().associator(a.index(), b.index(), c.index()));
}

LoopDiagnostics diagnose_table(std::size_t n, std::span<const Index> t) {
  LoopDiagnostics d;
  if (t.size() != n * n) throw Error(ErrorKind::BadDimension, "table size mismatch");

  auto record = [&d](const char* law, std::size_t a, std::size_t b, std::size_t c) {
    if (!d.first_violation)
      d.first_violation = Violation{law, {static_cast<Index>(a), static_cast<Index>(b),
                                          static_cast<Index>(c)}};
  };

  // Latin: triple is (row, column, repeated value) at the first repeat in
  // row-major order, then column-major for columns.
  d.is_latin = true;
  {
    std::vector<char> seen(n);
    for (std::size_t i = 0; i < n && d.is_latin; ++i) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t j = 0; j < n; ++j) {
        const Index v = t[i * n + j];
        if (v >= n || seen[v]) {
          d.is_latin = false;
          record("latin", i, j, v);
          break;
        }
        seen[v] = 1;
      }
    }
    for (std::size_t j = 0; j < n && d.is_latin; ++j) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        const Index v = t[i * n + j];
        if (seen[v]) {
          d.is_latin = false;
          record("latin", i, j, v);
          break;
        }
        seen[v] = 1;
      }
    }
  }
  // Out-of-range entries make the remaining laws meaningless.
  for (Index v : t)
    if (v >= n) return d;

  d.has_identity = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i] != i || t[i * n] != i) {
      d.has_identity = false;
      record("identity", i, 0, t[i * n]);
      break;
    }
  }

  d.is_commutative = true;
  for (std::size_t i = 0; i < n && d.is_commutative; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (t[i * n + j] != t[j * n + i]) {
        d.is_commutative = false;
        record("commutative", i, j, 0);
        break;
      }

  bool cml_law = true;
  for (std::size_t x = 0; x < n && cml_law; ++x) {
    const std::size_t xx = t[x * n + x];
    for (std::size_t y = 0; y < n && cml_law; ++y) {
      const std::size_t xy = t[x * n + y];
      for (std::size_t z = 0; z < n; ++z)
        if (t[xx * n + t[y * n + z]] != t[xy * n + t[x * n + z]]) {
          cml_law = false;
          record("cml", x, y, z);
          break;
        }
    }
  }
  d.is_cml = cml_law && d.is_commutative && d.is_latin && d.has_identity;

  bool assoc = true;
  for (std::size_t x = 0; x < n && assoc; ++x)
    for (std::size_t y = 0; y < n && assoc; ++y) {
      const std::size_t xy = t[x * n + y];
      for (std::size_t z = 0; z < n; ++z)
        if (t[xy * n + z] != t[x * n + t[y * n + z]]) {
          assoc = false;
          record("associative", x, y, z);
          break;
        }
    }
  d.is_associative = assoc && d.is_latin && d.has_identity;
  return d;
}

LoopDiagnostics diagnose(const CayleyLoop& loop) {
  return diagnose_table(loop.order(), loop.table());
}

}  // namespace mloop
