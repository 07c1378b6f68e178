#include "rangesched/io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "rangesched/error.h"

namespace rangesched {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

class CsvReader {
public:
  CsvReader(std::istream& in, std::string_view source) : in_(in), source_(source) {}

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream out;
    out << source_ << ":" << line_no_ << ": " << msg;
    throw InvalidInput(out.str());
  }

  void expect_header(std::string_view header) {
    std::vector<std::string> fields;
    if (!next(fields)) {
      line_no_ = std::max<std::size_t>(line_no_, 1);
      fail("missing header '" + std::string(header) + "'");
    }
    std::string joined;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      joined += (i ? "," : "") + fields[i];
    }
    if (joined != header) {
      fail("expected header '" + std::string(header) + "', got '" + joined + "'");
    }
  }

  // Next non-blank line split on commas, surrounding spaces trimmed.
  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') {
        line.pop_back();
      }
      if (line.find_first_not_of(" \t") == std::string::npos) {
        continue;
      }
      fields.clear();
      std::string field;
      std::istringstream ss(line);
      while (std::getline(ss, field, ',')) {
        const auto b = field.find_first_not_of(" \t");
        const auto e = field.find_last_not_of(" \t");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
      }
      if (line.back() == ',') {
        fields.emplace_back();
      }
      return true;
    }
    return false;
  }

  double number(const std::string& text, std::string_view what) const {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      fail("invalid " + std::string(what) + " '" + text + "'");
    }
    return v;
  }

  std::size_t index(const std::string& text, std::string_view what) const {
    std::size_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      fail("invalid " + std::string(what) + " '" + text + "'");
    }
    return v;
  }

  void expect_fields(const std::vector<std::string>& fields, std::size_t n) const {
    if (fields.size() != n) {
      std::ostringstream msg;
      msg << "expected " << n << " fields, got " << fields.size();
      fail(msg.str());
    }
  }

private:
  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
};

// Rows keyed by node index; checks for duplicates and gaps.
template <typename T>
std::vector<T> dense(const std::map<std::size_t, T>& rows, const CsvReader& reader) {
  std::vector<T> out;
  out.reserve(rows.size());
  std::size_t expect = 0;
  for (const auto& [node, value] : rows) {
    if (node != expect) {
      std::ostringstream msg;
      msg << "node " << expect << " is missing";
      reader.fail(msg.str());
    }
    out.push_back(value);
    ++expect;
  }
  return out;
}

template <typename F>
auto with_file(const std::filesystem::path& path, F&& f) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open " + path.string());
  }
  return f(in, path.string());
}

} // namespace

Topology read_topology_csv(std::istream& in, std::string_view source) {
  CsvReader reader(in, source);
  reader.expect_header("node,x_m,y_m");
  std::map<std::size_t, Point> rows;
  std::vector<std::string> f;
  while (reader.next(f)) {
    reader.expect_fields(f, 3);
    const auto node = reader.index(f[0], "node index");
    const Point pt{reader.number(f[1], "x coordinate"), reader.number(f[2], "y coordinate")};
    if (!rows.emplace(node, pt).second) {
      reader.fail("duplicate node " + f[0]);
    }
  }
  Topology topo;
  topo.positions = dense(rows, reader);
  validate(topo);
  return topo;
}

void write_topology_csv(std::ostream& out, const Topology& topo) {
  out << "node,x_m,y_m\n";
  for (std::size_t i = 0; i < topo.size(); ++i) {
    out << i << "," << format_double(topo.positions[i].x_m) << ","
        << format_double(topo.positions[i].y_m) << "\n";
  }
}

DistanceMatrix read_distance_csv(std::istream& in, std::string_view source) {
  CsvReader reader(in, source);
  reader.expect_header("i,j,d_m");
  struct Entry {
    std::size_t i, j;
    double d;
  };
  std::vector<Entry> entries;
  std::size_t n = 0;
  std::vector<std::string> f;
  while (reader.next(f)) {
    reader.expect_fields(f, 3);
    const auto i = reader.index(f[0], "index i");
    const auto j = reader.index(f[1], "index j");
    const double d = reader.number(f[2], "distance");
    if (i == j && d != 0.0) {
      reader.fail("nonzero diagonal distance");
    }
    if (d < 0.0) {
      reader.fail("negative distance");
    }
    entries.push_back({i, j, d});
    n = std::max({n, i + 1, j + 1});
  }
  if (n < 2) {
    reader.fail("distance file needs at least 2 nodes");
  }
  std::vector<std::optional<double>> m(n * n);
  for (const auto& e : entries) {
    m[e.i * n + e.j] = e.d;
  }
  std::vector<double> full(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        continue;
      }
      const auto& here = m[i * n + j];
      const auto& mirror = m[j * n + i];
      if (!here && !mirror) {
        std::ostringstream msg;
        msg << source << ": no distance given for pair (" << std::min(i, j) << ", "
            << std::max(i, j) << ")";
        throw InvalidInput(msg.str());
      }
      full[i * n + j] = here ? *here : *mirror;
    }
  }
  return from_distances(n, std::move(full));
}

void write_distance_csv(std::ostream& out, const DistanceMatrix& d) {
  out << "i,j,d_m\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      out << i << "," << j << "," << format_double(d(i, j)) << "\n";
    }
  }
}

Schedule read_schedule_csv(std::istream& in, std::string_view source) {
  CsvReader reader(in, source);
  reader.expect_header("node,delta_ns");
  std::map<std::size_t, double> rows;
  std::vector<std::string> f;
  while (reader.next(f)) {
    reader.expect_fields(f, 2);
    const auto node = reader.index(f[0], "node index");
    const double delay = reader.number(f[1], "delay");
    if (delay < 0.0) {
      reader.fail("negative delay");
    }
    if (!rows.emplace(node, delay).second) {
      reader.fail("duplicate node " + f[0]);
    }
  }
  return Schedule(dense(rows, reader));
}

void write_schedule_csv(std::ostream& out, const Schedule& s) {
  out << "node,delta_ns\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << i << "," << format_double(s[i]) << "\n";
  }
}

Topology load_topology(const std::filesystem::path& path) {
  return with_file(path, [](std::istream& in, const std::string& src) {
    return read_topology_csv(in, src);
  });
}

DistanceMatrix load_distances(const std::filesystem::path& path) {
  return with_file(path, [](std::istream& in, const std::string& src) {
    return read_distance_csv(in, src);
  });
}

Schedule load_schedule(const std::filesystem::path& path) {
  return with_file(path, [](std::istream& in, const std::string& src) {
    return read_schedule_csv(in, src);
  });
}

nlohmann::json to_json(const InterferenceReport& report) {
  return {
      {"per_receiver_overlap_ns", report.per_receiver_overlap_ns},
      {"total_overlap_ns", report.total_overlap_ns},
      {"fraction_clean", report.fraction_clean},
      {"valid", report.valid},
  };
}

nlohmann::json to_json(const Schedule& s) {
  return nlohmann::json(std::vector<double>(s.delays().begin(), s.delays().end()));
}

} // namespace rangesched
