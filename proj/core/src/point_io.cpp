#include "simjoin/point_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "simjoin/errors.hpp"

namespace simjoin {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

PointSet read_point_set(std::istream& in) {
  std::string raw;
  int line_no = 0;
  int dim = 0;
  std::vector<std::uint64_t> words;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (dim == 0) {
      if (line.substr(0, 2) != "d=") throw ParseError("expected header \"d=<dim>\"", line_no);
      try {
        std::size_t used = 0;
        dim = std::stoi(std::string(line.substr(2)), &used);
        if (used != line.size() - 2) throw ParseError("trailing characters in header", line_no);
      } catch (const std::logic_error&) {
        throw ParseError("invalid dimension in header", line_no);
      }
      if (dim < 1 || dim > kMaxDim) throw ParseError("dimension must be in [1, 64]", line_no);
      continue;
    }
    if (static_cast<int>(line.size()) != dim) {
      throw ParseError("expected " + std::to_string(dim) + " binary digits, got " + std::to_string(line.size()),
                       line_no);
    }
    std::uint64_t bits = 0;
    for (char c : line) {
      if (c != '0' && c != '1') throw ParseError("invalid character '" + std::string(1, c) + "'", line_no);
      bits = (bits << 1) | static_cast<std::uint64_t>(c == '1');
    }
    words.push_back(bits);
  }
  if (dim == 0) throw ParseError("missing \"d=<dim>\" header", line_no);
  return PointSet(dim, std::move(words));
}

PointSet read_point_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_point_set(in);
}

void write_point_set(std::ostream& out, const PointSet& set) {
  out << "d=" << set.dim() << '\n';
  for (auto w : set) out << format_word(w, set.dim()) << '\n';
}

void write_point_set(const std::filesystem::path& path, const PointSet& set) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_point_set(out, set);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace simjoin
