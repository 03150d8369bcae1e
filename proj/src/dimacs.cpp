#include "pcforge/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "pcforge/errors.hpp"

namespace pcforge {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

long long to_int(std::string_view token, std::size_t line) {
  long long value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Encoding parse_dimacs(std::string_view text) {
  std::vector<long long> aux_raw;
  std::size_t aux_line = 0;
  bool have_header = false;
  long long declared_vars = 0;
  long long declared_clauses = 0;
  std::vector<std::vector<long long>> clauses;
  std::vector<long long> current;
  std::size_t current_start = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    auto tokens = split_ws(line);
    if (tokens.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    if (tokens[0] == "c" || tokens[0][0] == 'c') {
      if (tokens.size() >= 2 && tokens[0] == "c" && tokens[1] == "aux") {
        if (have_header) throw ParseError(line_no, "'c aux' must precede the 'p' line");
        if (tokens.back() != "0") throw ParseError(line_no, "'c aux' line must end with 0");
        for (std::size_t i = 2; i + 1 < tokens.size(); ++i) {
          long long v = to_int(tokens[i], line_no);
          if (v <= 0) throw ParseError(line_no, "auxiliary variables must be positive");
          aux_raw.push_back(v);
        }
        aux_line = line_no;
      }
      if (eol == text.size()) break;
      continue;
    }
    if (tokens[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate 'p' line");
      if (tokens.size() != 4 || tokens[1] != "cnf") {
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      declared_vars = to_int(tokens[2], line_no);
      declared_clauses = to_int(tokens[3], line_no);
      if (declared_vars < 0 || declared_clauses < 0 ||
          declared_vars > std::numeric_limits<int>::max()) {
        throw ParseError(line_no, "malformed header, negative or oversized counts");
      }
      have_header = true;
      if (eol == text.size()) break;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause data before the 'p cnf' header");
    for (auto token : tokens) {
      long long value = to_int(token, line_no);
      if (current.empty()) current_start = line_no;
      if (value == 0) {
        clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (value > declared_vars || -value > declared_vars) {
        throw ParseError(line_no, "variable " + std::to_string(value < 0 ? -value : value) +
                                      " exceeds declared count " + std::to_string(declared_vars));
      }
      current.push_back(value);
    }
    if (eol == text.size()) break;
  }

  if (!have_header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(current_start, "unterminated clause (missing 0)");
  if (static_cast<long long>(clauses.size()) != declared_clauses) {
    throw ParseError(line_no, "header declares " + std::to_string(declared_clauses) +
                                  " clauses but " + std::to_string(clauses.size()) + " were read");
  }

  Formula f(static_cast<Var>(declared_vars));
  for (const auto& raw : clauses) {
    std::vector<Lit> lits;
    lits.reserve(raw.size());
    for (long long v : raw) lits.push_back(Lit::from_dimacs(static_cast<int>(v)));
    f.add(Clause(std::move(lits)));
  }
  std::vector<Var> aux;
  for (long long v : aux_raw) {
    if (v > declared_vars) {
      throw ParseError(aux_line, "auxiliary variable " + std::to_string(v) +
                                     " exceeds declared count " + std::to_string(declared_vars));
    }
    aux.push_back(static_cast<Var>(v));
  }
  return Encoding(std::move(f), std::move(aux));
}

Encoding read_dimacs_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_dimacs(buffer.str());
}

std::string write_dimacs(const Formula& f, const std::vector<std::string>& comments) {
  return write_dimacs(Encoding(f), comments);
}

std::string write_dimacs(const Encoding& e, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& line : comments) out << "c " << line << '\n';
  if (e.has_aux()) {
    out << "c aux";
    for (Var v : e.aux()) out << ' ' << v;
    out << " 0\n";
  }
  const Formula& f = e.formula();
  out << "p cnf " << f.num_vars() << ' ' << f.size() << '\n';
  for (const auto& c : f) {
    for (Lit l : c) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace pcforge
