#include "probematch/lp/model.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "probematch/errors.hpp"

namespace probematch::lp {

std::size_t LPModel::add_row(RowSense sense, double rhs, std::string name) {
  rows_.push_back({sense, rhs, std::move(name)});
  return rows_.size() - 1;
}

std::size_t LPModel::add_column(double objective, std::vector<Entry> entries, std::string name,
                                std::optional<ColumnMeta> meta) {
  for (const auto& e : entries) {
    if (e.row >= rows_.size()) throw Error("column entry references missing row");
  }
  cols_.push_back({objective, std::move(entries), std::move(name), std::move(meta)});
  return cols_.size() - 1;
}

std::size_t LPModel::nonzeros() const noexcept {
  std::size_t k = 0;
  for (const auto& c : cols_) k += c.entries.size();
  return k;
}

namespace {

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string token_or_dash(const std::string& s) {
  if (s.empty()) return "-";
  std::string out = s;
  for (char& ch : out) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') ch = '_';
  }
  return out;
}

std::string dash_to_empty(const std::string& s) { return s == "-" ? std::string() : s; }

}  // namespace

void write_model(const LPModel& m, std::ostream& os) {
  os << "lpmodel 1 maximize\n";
  os << "rows " << m.row_count() << '\n';
  for (std::size_t i = 0; i < m.row_count(); ++i) {
    const Row& r = m.row(i);
    os << "r " << i << ' ' << (r.sense == RowSense::kEqual ? 'E' : 'L') << ' '
       << fmt_double(r.rhs) << ' ' << token_or_dash(r.name) << '\n';
  }
  os << "cols " << m.column_count() << '\n';
  for (std::size_t j = 0; j < m.column_count(); ++j) {
    const Column& c = m.column(j);
    os << "c " << j << ' ' << fmt_double(c.objective) << ' ' << token_or_dash(c.name);
    if (c.meta) {
      os << ' ' << c.meta->group << ' ';
      if (c.meta->string.empty()) {
        os << "()";
      } else {
        for (std::size_t k = 0; k < c.meta->string.size(); ++k) {
          if (k) os << ',';
          os << c.meta->string[k];
        }
      }
    } else {
      os << " - -";
    }
    os << '\n';
  }
  os << "nz " << m.nonzeros() << '\n';
  for (std::size_t j = 0; j < m.column_count(); ++j) {
    for (const auto& e : m.column(j).entries) {
      os << "a " << e.row << ' ' << j << ' ' << fmt_double(e.coef) << '\n';
    }
  }
  os << "end\n";
}

LPModel read_model(std::istream& is) {
  auto fail = [](const std::string& what) -> DataError { return DataError("lp model: " + what); };
  std::string tag;
  std::string sense;
  int version = 0;
  if (!(is >> tag >> version >> sense) || tag != "lpmodel" || version != 1 || sense != "maximize") {
    throw fail("bad header");
  }
  std::size_t nrows = 0;
  if (!(is >> tag >> nrows) || tag != "rows") throw fail("expected rows");
  LPModel m;
  for (std::size_t i = 0; i < nrows; ++i) {
    std::size_t idx = 0;
    char s = 0;
    std::string rhs;
    std::string name;
    if (!(is >> tag >> idx >> s >> rhs >> name) || tag != "r" || idx != i) throw fail("bad row line");
    m.add_row(s == 'E' ? RowSense::kEqual : RowSense::kLessEqual, std::stod(rhs), dash_to_empty(name));
  }
  std::size_t ncols = 0;
  if (!(is >> tag >> ncols) || tag != "cols") throw fail("expected cols");
  struct PendingCol {
    double obj;
    std::string name;
    std::optional<ColumnMeta> meta;
  };
  std::vector<PendingCol> pending;
  for (std::size_t j = 0; j < ncols; ++j) {
    std::size_t idx = 0;
    std::string obj;
    std::string name;
    std::string group;
    std::string str;
    if (!(is >> tag >> idx >> obj >> name >> group >> str) || tag != "c" || idx != j) {
      throw fail("bad column line");
    }
    PendingCol pc{std::stod(obj), dash_to_empty(name), std::nullopt};
    if (group != "-") {
      ColumnMeta meta;
      meta.group = static_cast<std::size_t>(std::stoull(group));
      if (str != "()") {
        std::stringstream ss(str);
        std::string item;
        while (std::getline(ss, item, ',')) meta.string.push_back(static_cast<EdgeIndex>(std::stoul(item)));
      }
      pc.meta = std::move(meta);
    }
    pending.push_back(std::move(pc));
  }
  std::size_t nnz = 0;
  if (!(is >> tag >> nnz) || tag != "nz") throw fail("expected nz");
  std::vector<std::vector<Entry>> entries(ncols);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t r = 0;
    std::size_t c = 0;
    std::string coef;
    if (!(is >> tag >> r >> c >> coef) || tag != "a" || r >= nrows || c >= ncols) {
      throw fail("bad coefficient line");
    }
    entries[c].push_back({r, std::stod(coef)});
  }
  if (!(is >> tag) || tag != "end") throw fail("missing end marker");
  for (std::size_t j = 0; j < ncols; ++j) {
    m.add_column(pending[j].obj, std::move(entries[j]), std::move(pending[j].name),
                 std::move(pending[j].meta));
  }
  return m;
}

}  // namespace probematch::lp
