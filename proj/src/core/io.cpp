#include "core/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hsd::io {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string region_to_json(const geom::ConvexRegion& r) {
  std::string out = "{\"vertices\": [";
  const auto& v = r.vertices();
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += "[" + fmt17(v[i].x) + ", " + fmt17(v[i].y) + "]";
  }
  out += "]}\n";
  return out;
}

geom::ConvexRegion region_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    // parse_error for malformed text, out_of_range for numeric overflow
    throw std::invalid_argument(std::string("region json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw std::invalid_argument("region json: expected {\"vertices\": [[x, y], ...]}");
  std::vector<Vec2> verts;
  for (const auto& e : j["vertices"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw std::invalid_argument("region json: each vertex must be a pair of numbers");
    const double x = e[0].get<double>(), y = e[1].get<double>();
    if (!std::isfinite(x) || !std::isfinite(y))
      throw std::invalid_argument("region json: non-finite vertex");
    verts.push_back({x, y});
  }
  geom::ConvexRegion r(std::move(verts));
  const auto& v = r.vertices();
  const size_t m = v.size();
  if (m >= 3) {
    for (size_t i = 0; i < m; ++i) {
      const Vec2 a = v[i], b = v[(i + 1) % m], c = v[(i + 2) % m];
      if (cross(b - a, c - b) < -1e-12 * norm(b - a) * norm(c - b))
        throw std::invalid_argument("region json: vertices are not in convex position");
    }
  }
  return r;
}

emp::WeightedSample sample_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("sample csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y,w")
    throw std::invalid_argument("sample csv: expected header 'x,y,w', got '" + line + "'");
  std::vector<Vec2> pts;
  std::vector<double> ws;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v[3];
    std::istringstream row(line);
    std::string cell;
    for (int k = 0; k < 3; ++k) {
      if (!std::getline(row, cell, ','))
        throw std::invalid_argument("sample csv: line " + std::to_string(lineno) +
                                    ": expected 3 fields");
      size_t idx = 0;
      try {
        v[k] = std::stod(cell, &idx);
      } catch (const std::exception&) {
        idx = 0;
      }
      if (cell.empty() || idx != cell.size())
        throw std::invalid_argument("sample csv: line " + std::to_string(lineno) +
                                    ": bad number '" + cell + "'");
    }
    if (std::getline(row, cell, ','))
      throw std::invalid_argument("sample csv: line " + std::to_string(lineno) +
                                  ": expected 3 fields");
    pts.push_back({v[0], v[1]});
    ws.push_back(v[2]);
  }
  return emp::WeightedSample(std::move(pts), std::move(ws));
}

std::string sample_to_csv(const emp::WeightedSample& s) {
  std::string out = "x,y,w\n";
  for (int i = 0; i < s.n(); ++i) {
    out += fmt17(s.points()[i].x) + "," + fmt17(s.points()[i].y) + "," +
           fmt17(s.weights()[i]) + "\n";
  }
  return out;
}

}  // namespace hsd::io
