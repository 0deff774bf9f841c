#include "cfgexplore/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace cfgx {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::BadFile, "cannot open " + tmp.string());
    out << content;
    out.flush();
    if (!out) fail(ErrorCode::BadFile, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

namespace {

std::vector<std::string> data_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadFile, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

DegreeSequence read_degree_file(const std::filesystem::path& path) {
  std::vector<int> degrees;
  for (const auto& line : data_lines(path)) {
    std::istringstream ss(line);
    int d;
    if (!(ss >> d))
      fail(ErrorCode::BadFile, "bad degree line: '" + line + "'");
    degrees.push_back(d);
  }
  return DegreeSequence::from(std::move(degrees));
}

std::vector<std::pair<int, double>> read_pair_table(const std::filesystem::path& path) {
  std::vector<std::pair<int, double>> entries;
  for (const auto& line : data_lines(path)) {
    std::istringstream ss(line);
    int k;
    double v;
    if (!(ss >> k >> v))
      fail(ErrorCode::BadFile, "bad record line: '" + line + "'");
    entries.push_back({k, v});
  }
  if (entries.empty()) fail(ErrorCode::EmptyInput, "no records in " + path.string());
  return entries;
}

std::string graph_to_edge_list(const Multigraph& g) {
  std::string out;
  for (const auto& [u, v] : g.edges) {
    out += std::to_string(u + 1);
    out += ' ';
    out += std::to_string(v + 1);
    out += '\n';
  }
  return out;
}

std::string log_to_text(const ExcursionLog& log) {
  std::string out = "# j type k A_after\n";
  for (const auto& rec : log.steps) {
    out += std::to_string(rec.j);
    out += ' ';
    out += to_string(rec.type);
    out += ' ';
    out += std::to_string(rec.k);
    out += ' ';
    out += std::to_string(rec.active_after);
    out += '\n';
  }
  return out;
}

std::string path_to_csv(const PathPair& path) {
  std::string out = "t,psi,zeta_0";
  for (int k = 1; k <= path.K; ++k) out += ",zeta_" + std::to_string(k);
  out += '\n';
  for (std::size_t i = 0; i < path.t.size(); ++i) {
    out += format_double(path.t[i]);
    out += ',';
    out += format_double(path.psi[i]);
    out += ',';
    out += format_double(path.zeta0[i]);
    for (int k = 1; k <= path.K; ++k) {
      out += ',';
      out += format_double(path.zeta[k][i]);
    }
    out += '\n';
  }
  return out;
}

PathPair read_path_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(ErrorCode::BadFile, "cannot open " + file.string());
  std::string header;
  if (!std::getline(in, header))
    fail(ErrorCode::BadFile, "empty path file " + file.string());
  int columns = 1;
  for (char c : header)
    if (c == ',') columns++;
  if (columns < 3) fail(ErrorCode::BadFile, "path header needs t,psi,zeta_0,...");
  const int K = columns - 3;

  PathPair path;
  path.K = K;
  path.zeta.assign(K + 1, {});
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (static_cast<int>(row.size()) != columns)
      fail(ErrorCode::BadFile, "ragged path row: '" + line + "'");
    path.t.push_back(row[0]);
    path.psi.push_back(row[1]);
    path.zeta0.push_back(row[2]);
    for (int k = 1; k <= K; ++k) path.zeta[k].push_back(row[2 + k]);
  }
  if (path.t.size() < 2) fail(ErrorCode::BadFile, "path needs at least two rows");
  return path;
}

std::string ct_path_to_text(const CTPath& path, long long stride) {
  if (stride < 1) stride = 1;
  std::string out = "# t k x0 r\n";
  const double inv_n = 1.0 / static_cast<double>(path.n);
  path.replay([&](std::size_t j, double t, long long a,
                  const std::vector<long long>& v, long long) {
    if (static_cast<long long>(j) % stride != 0) return;
    long long stubs = std::max<long long>(a - 1, 0);
    for (int k = 1; k < static_cast<int>(v.size()); ++k)
      stubs += static_cast<long long>(k) * v[k];
    const auto& jump = path.jumps[j];
    out += format_double(t);
    out += ' ';
    out += std::to_string(jump.k);
    out += ' ';
    out += format_double(static_cast<double>(a - 1) * inv_n);
    out += ' ';
    out += format_double(static_cast<double>(stubs) * inv_n);
    out += '\n';
  });
  return out;
}

}  // namespace cfgx
