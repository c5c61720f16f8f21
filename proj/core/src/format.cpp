#include "freqsec/conic/format.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "freqsec/errors.hpp"

namespace freqsec::conic {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_terms(std::ostream& out, const Eigen::RowVectorXd& coefs) {
  int nnz = 0;
  for (Eigen::Index i = 0; i < coefs.size(); ++i) {
    if (coefs[i] != 0.0) ++nnz;
  }
  out << ' ' << nnz;
  for (Eigen::Index i = 0; i < coefs.size(); ++i) {
    if (coefs[i] != 0.0) out << ' ' << i << ' ' << num(coefs[i]);
  }
}

Eigen::RowVectorXd read_terms(std::istringstream& in, Eigen::Index n, const char* what) {
  int nnz = 0;
  if (!(in >> nnz) || nnz < 0) throw Error(Errc::BadInput, std::string("bad term count in ") + what);
  Eigen::RowVectorXd coefs = Eigen::RowVectorXd::Zero(n);
  for (int k = 0; k < nnz; ++k) {
    Eigen::Index idx;
    double coef;
    if (!(in >> idx >> coef) || idx < 0 || idx >= n) {
      throw Error(Errc::BadInput, std::string("bad term in ") + what);
    }
    coefs[idx] = coef;
  }
  return coefs;
}

std::string quote(const std::string& name) {
  // names carry no spaces by construction; keep the format single-token
  std::string out = name.empty() ? "_" : name;
  for (char& c : out) {
    if (c == ' ' || c == '\t') c = '_';
  }
  return out;
}

}  // namespace

void export_program(const ConicProgram& program, std::ostream& out) {
  out << "FREQSEC-CONIC 1\n";
  out << "NVARS " << program.num_variables() << "\n";
  for (std::size_t i = 0; i < program.num_variables(); ++i) {
    out << "VAR " << i << ' ' << quote(program.variable_names[i]) << ' '
        << num(program.lower[static_cast<Eigen::Index>(i)]) << ' '
        << num(program.upper[static_cast<Eigen::Index>(i)]) << "\n";
  }
  for (std::size_t b : program.binaries) out << "BIN " << b << "\n";
  for (std::size_t s : program.interval_selectors) out << "SEL " << s << "\n";
  out << "OBJ " << num(program.objective_constant);
  write_terms(out, program.objective.transpose());
  out << "\n";
  for (const LinearRow& row : program.rows) {
    out << "LIN " << quote(row.name) << ' '
        << (row.kind == LinearRow::Kind::Eq ? "EQ" : "LE") << ' ' << num(row.rhs);
    write_terms(out, row.coefficients);
    out << "\n";
  }
  for (const RsocBlock& cone : program.cones) {
    out << "RSOC " << quote(cone.name);
    out << ' ' << num(cone.u_constant);
    write_terms(out, cone.u_coefficients);
    out << ' ' << num(cone.v_constant);
    write_terms(out, cone.v_coefficients);
    out << ' ' << num(cone.w_constant);
    write_terms(out, cone.w_coefficients);
    out << "\n";
  }
  for (const BigMLink& link : program.links) {
    out << "LINK " << link.binary << ' ' << link.row << ' ' << num(link.big_m) << "\n";
  }
}

std::string export_program(const ConicProgram& program) {
  std::ostringstream out;
  export_program(program, out);
  return out.str();
}

ConicProgram import_program(std::istream& in) {
  ConicProgram program;
  std::string line;
  Eigen::Index n = -1;
  bool header_seen = false;

  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "FREQSEC-CONIC") {
      int version = 0;
      ls >> version;
      if (version != 1) throw Error(Errc::BadInput, "unsupported program format version");
      header_seen = true;
    } else if (kind == "NVARS") {
      if (!(ls >> n) || n < 0) throw Error(Errc::BadInput, "bad NVARS record");
      program.variable_names.assign(static_cast<std::size_t>(n), "");
      program.lower = Eigen::VectorXd::Zero(n);
      program.upper = Eigen::VectorXd::Zero(n);
      program.objective = Eigen::VectorXd::Zero(n);
    } else if (kind == "VAR") {
      Eigen::Index idx;
      std::string name;
      double lo, hi;
      if (!(ls >> idx >> name >> lo >> hi) || idx < 0 || idx >= n) {
        throw Error(Errc::BadInput, "bad VAR record: " + line);
      }
      program.variable_names[static_cast<std::size_t>(idx)] = name;
      program.lower[idx] = lo;
      program.upper[idx] = hi;
    } else if (kind == "BIN") {
      std::size_t idx;
      if (!(ls >> idx)) throw Error(Errc::BadInput, "bad BIN record");
      program.binaries.push_back(idx);
    } else if (kind == "SEL") {
      std::size_t idx;
      if (!(ls >> idx)) throw Error(Errc::BadInput, "bad SEL record");
      program.interval_selectors.push_back(idx);
    } else if (kind == "OBJ") {
      if (!(ls >> program.objective_constant)) throw Error(Errc::BadInput, "bad OBJ record");
      program.objective = read_terms(ls, n, "OBJ").transpose();
    } else if (kind == "LIN") {
      LinearRow row;
      std::string op;
      if (!(ls >> row.name >> op >> row.rhs)) throw Error(Errc::BadInput, "bad LIN record");
      if (op == "EQ") {
        row.kind = LinearRow::Kind::Eq;
      } else if (op == "LE") {
        row.kind = LinearRow::Kind::LessEq;
      } else {
        throw Error(Errc::BadInput, "bad LIN operator " + op);
      }
      row.coefficients = read_terms(ls, n, "LIN");
      program.rows.push_back(std::move(row));
    } else if (kind == "RSOC") {
      RsocBlock cone;
      if (!(ls >> cone.name >> cone.u_constant)) throw Error(Errc::BadInput, "bad RSOC record");
      cone.u_coefficients = read_terms(ls, n, "RSOC u");
      if (!(ls >> cone.v_constant)) throw Error(Errc::BadInput, "bad RSOC record");
      cone.v_coefficients = read_terms(ls, n, "RSOC v");
      if (!(ls >> cone.w_constant)) throw Error(Errc::BadInput, "bad RSOC record");
      cone.w_coefficients = read_terms(ls, n, "RSOC w");
      program.cones.push_back(std::move(cone));
    } else if (kind == "LINK") {
      BigMLink link;
      if (!(ls >> link.binary >> link.row >> link.big_m)) {
        throw Error(Errc::BadInput, "bad LINK record");
      }
      program.links.push_back(link);
    } else {
      throw Error(Errc::BadInput, "unknown record '" + kind + "'");
    }
  }
  if (!header_seen || n < 0) {
    throw Error(Errc::BadInput, "missing FREQSEC-CONIC header or NVARS record");
  }
  return program;
}

ConicProgram import_program(const std::string& text) {
  std::istringstream in(text);
  return import_program(in);
}

}  // namespace freqsec::conic
