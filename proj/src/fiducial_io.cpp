#include "sictower/fiducial_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sictower {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Fiducial read_fiducial(std::istream& in) {
  Fiducial f;
  std::string line;
  std::int64_t dim = -1;
  Eigen::Index next = 0;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string tag = "label:";
      std::string body = trim(t.substr(1));
      if (body.rfind(tag, 0) == 0) f.label = trim(body.substr(tag.size()));
      continue;
    }
    std::istringstream ls(t);
    if (dim < 0) {
      if (!(ls >> dim) || dim < 2)
        throw std::runtime_error("fiducial file: bad dimension line");
      f.dim = dim;
      f.components = Vec::Zero(dim);
      continue;
    }
    double re, im;
    if (!(ls >> re >> im))
      throw std::runtime_error("fiducial file: bad component line");
    if (next >= dim)
      throw std::runtime_error("fiducial file: too many components");
    f.components(next++) = Complex(re, im);
  }
  if (dim < 0 || next != dim)
    throw std::runtime_error("fiducial file: component count mismatch");
  if (f.components.norm() < 1e-12)
    throw std::runtime_error("fiducial file: vector has zero norm");
  return f;
}

Fiducial read_fiducial_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_fiducial(in);
}

void write_fiducial(std::ostream& out, const Fiducial& f) {
  if (!f.label.empty()) out << "# label: " << f.label << "\n";
  out << f.dim << "\n";
  char buf[64];
  for (Eigen::Index k = 0; k < f.components.size(); ++k) {
    int n = std::snprintf(buf, sizeof buf, "%.17g %.17g\n",
                          std::real(f.components(k)),
                          std::imag(f.components(k)));
    out.write(buf, n);
  }
}

void write_fiducial_file(const std::filesystem::path& path, const Fiducial& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_fiducial(out, f);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace sictower
