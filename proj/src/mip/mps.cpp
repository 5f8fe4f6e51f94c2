#include "corridor/mip/mps.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace corridor::mip {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// MPS names must not contain spaces; ours use [] and commas, which the free
// format tolerates, but normalize brackets for picky readers.
std::string mps_name(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char ch : raw) {
    if (ch == '[') out += '(';
    else if (ch == ']') out += ')';
    else out += ch;
  }
  return out;
}

}  // namespace

std::string write_mps(const MipModel& model) {
  std::string s;
  s.reserve(1 << 20);
  s += "NAME corridor_model\n";
  s += "ROWS\n N COST\n";

  struct RowShape {
    char type;
    double rhs;
    double range;  // 0 when unused
  };
  std::vector<RowShape> shapes;
  shapes.reserve(model.rows.size());
  for (const auto& r : model.rows) {
    RowShape sh{'E', 0.0, 0.0};
    const bool lo = std::isfinite(r.lb), up = std::isfinite(r.ub);
    if (lo && up && r.lb == r.ub) {
      sh = {'E', r.lb, 0.0};
    } else if (lo && up) {
      sh = {'L', r.ub, r.ub - r.lb};
    } else if (up) {
      sh = {'L', r.ub, 0.0};
    } else {
      sh = {'G', r.lb, 0.0};
    }
    shapes.push_back(sh);
    s += " ";
    s += sh.type;
    s += " " + mps_name(r.name) + "\n";
  }

  // column-wise entries, model order
  std::vector<std::vector<std::pair<int, double>>> cols(model.vars.size());
  for (int ri = 0; ri < static_cast<int>(model.rows.size()); ++ri)
    for (const auto& [col, coeff] : model.rows[static_cast<std::size_t>(ri)].terms)
      cols[static_cast<std::size_t>(col)].push_back({ri, coeff});

  s += "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    const VarInfo& v = model.vars[j];
    const bool want_int = v.kind == VarKind::binary;
    if (want_int != in_int) {
      s += "    MARKER" + std::to_string(marker++) + " 'MARKER' " +
           (want_int ? "'INTORG'" : "'INTEND'") + "\n";
      in_int = want_int;
    }
    const std::string cname = mps_name(v.name);
    if (v.obj != 0.0) s += "    " + cname + " COST " + num(v.obj) + "\n";
    for (const auto& [ri, coeff] : cols[j])
      s += "    " + cname + " " + mps_name(model.rows[static_cast<std::size_t>(ri)].name) + " " +
           num(coeff) + "\n";
  }
  if (in_int) s += "    MARKER" + std::to_string(marker++) + " 'MARKER' 'INTEND'\n";

  s += "RHS\n";
  for (std::size_t ri = 0; ri < shapes.size(); ++ri)
    if (shapes[ri].rhs != 0.0)
      s += "    RHS " + mps_name(model.rows[ri].name) + " " + num(shapes[ri].rhs) + "\n";

  bool any_range = false;
  for (const auto& sh : shapes) any_range |= sh.range != 0.0;
  if (any_range) {
    s += "RANGES\n";
    for (std::size_t ri = 0; ri < shapes.size(); ++ri)
      if (shapes[ri].range != 0.0)
        s += "    RNG " + mps_name(model.rows[ri].name) + " " + num(shapes[ri].range) + "\n";
  }

  s += "BOUNDS\n";
  for (const VarInfo& v : model.vars) {
    const std::string cname = mps_name(v.name);
    if (v.kind == VarKind::binary && v.lb == 0.0 && v.ub == 1.0) {
      s += " BV BND " + cname + "\n";
      continue;
    }
    if (v.lb == v.ub) {
      s += " FX BND " + cname + " " + num(v.lb) + "\n";
      continue;
    }
    s += " LO BND " + cname + " " + num(v.lb) + "\n";
    if (std::isfinite(v.ub))
      s += " UP BND " + cname + " " + num(v.ub) + "\n";
  }

  if (!model.sos2.empty()) {
    s += "SOS\n";
    for (std::size_t g = 0; g < model.sos2.size(); ++g) {
      s += " S2 " + mps_name(model.sos2[g].name) + "\n";
      int w = 1;
      for (int col : model.sos2[g].cols)
        s += "    " + mps_name(model.vars[static_cast<std::size_t>(col)].name) + " " +
             std::to_string(w++) + "\n";
    }
  }
  s += "ENDATA\n";
  return s;
}

}  // namespace corridor::mip
