// Copyright 2026 The symbreak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "symbreak/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "symbreak/errors.hpp"

namespace symbreak::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& cell, const fs::path& path) {
  const std::string t = trim(cell);
  if (t.empty()) throw ParseError(path.string() + ": empty numeric cell");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw ParseError(path.string() + ": not a number: '" + t + "'");
  }
  return v;
}

std::vector<double> parse_row(const std::string& line, const fs::path& path) {
  std::vector<double> row;
  for (const auto& cell : split(line, ',')) row.push_back(parse_double(cell, path));
  return row;
}

std::string format_row(const double* data, Eigen::Index n, Eigen::Index stride) {
  std::string out;
  char buf[40];
  for (Eigen::Index j = 0; j < n; ++j) {
    std::snprintf(buf, sizeof(buf), "%.17g", data[j * stride]);
    if (j) out += ',';
    out += buf;
  }
  return out;
}

Eigen::MatrixXd from_rows(const std::vector<std::vector<double>>& rows,
                          const fs::path& path) {
  if (rows.empty()) return Eigen::MatrixXd(0, 0);
  const auto cols = rows.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ParseError(path.string() + ": ragged rows");
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

nlohmann::json perm_json(const groups::GroupElement& e) { return e.perm(); }

nlohmann::json read_json(const fs::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_matrix_csv(const fs::path& path, const Eigen::MatrixXd& m) {
  std::string text;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    text += format_row(m.data() + i, m.cols(), m.outerStride());
    text += '\n';
  }
  write_text(path, text);
}

Eigen::MatrixXd read_matrix_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(parse_row(line, path));
  }
  return from_rows(rows, path);
}

reps::RepPtr read_representation_csv(const fs::path& path,
                                     const groups::GroupPtr& group) {
  std::istringstream in(read_text(path));
  std::vector<std::vector<std::vector<double>>> blocks(group->order());
  std::set<std::size_t> seen;
  std::string line;
  std::vector<std::vector<double>>* current = nullptr;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.rfind("element", 0) == 0) {
      const auto cells = split(t, ',');
      if (cells.size() != 2) throw ParseError(path.string() + ": bad header '" + t + "'");
      const double idx = parse_double(cells[1], path);
      if (idx < 0 || idx >= static_cast<double>(group->order()) ||
          idx != static_cast<double>(static_cast<std::size_t>(idx))) {
        throw ParseError(path.string() + ": element index out of range");
      }
      const auto i = static_cast<std::size_t>(idx);
      if (!seen.insert(i).second) {
        throw ParseError(path.string() + ": duplicate element " + std::to_string(i));
      }
      current = &blocks[i];
      continue;
    }
    if (!current) throw ParseError(path.string() + ": matrix row before header");
    current->push_back(parse_row(t, path));
  }
  if (seen.size() != group->order()) {
    throw ParseError(path.string() + ": expected one matrix per group element");
  }
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(blocks.size());
  for (const auto& b : blocks) mats.push_back(from_rows(b, path));
  return reps::custom_rep(group, std::move(mats));
}

void write_representation_csv(const fs::path& path,
                              const reps::Representation& rep) {
  std::string text;
  for (groups::ElementIndex g = 0; g < rep.group()->order(); ++g) {
    text += "element," + std::to_string(g) + "\n";
    const auto& m = rep.matrix(g);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      text += format_row(m.data() + i, m.cols(), m.outerStride()) + "\n";
    }
  }
  write_text(path, text);
}

nlohmann::json basis_manifest(const solver::WeightBasis& basis) {
  const auto& sys = basis.system;
  const auto& G = *sys.rep_in->group();
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t i = 0; i < basis.rank(); ++i) {
    files.push_back("basis_" + std::to_string(i) + ".csv");
  }
  nlohmann::json reps_json = nlohmann::json::array();
  for (const auto& b : sys.blocks) {
    reps_json.push_back({{"index", b.representative},
                         {"perm", perm_json(G.element(b.representative))}});
  }
  nlohmann::json k_gens = nlohmann::json::array();
  std::size_t k_order = G.order();
  if (sys.subgroup_k) {
    for (auto g : sys.subgroup_k->generators()) k_gens.push_back(perm_json(G.element(g)));
    k_order = sys.subgroup_k->order();
  }
  std::vector<double> sv(basis.singular_values.data(),
                         basis.singular_values.data() + basis.singular_values.size());
  return {{"group", G.name()},
          {"mode", solver::to_string(sys.mode)},
          {"m", sys.m()},
          {"n", sys.n()},
          {"rank", basis.rank()},
          {"blocks", sys.blocks.size()},
          {"k_generators", k_gens},
          {"k_order", k_order},
          {"coset_representatives", reps_json},
          {"null_threshold", basis.null_threshold},
          {"sigma_max", basis.sigma_max},
          {"singular_values", sv},
          {"files", files}};
}

void export_basis(const solver::WeightBasis& basis, const fs::path& dir) {
  fs::create_directories(dir);
  const auto manifest = basis_manifest(basis);
  for (std::size_t i = 0; i < basis.rank(); ++i) {
    write_matrix_csv(dir / manifest["files"][i].get<std::string>(),
                     basis.matrices[i]);
  }
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

solver::WeightBasis load_basis(const fs::path& dir, const reps::RepPtr& rep_in,
                               const reps::RepPtr& rep_out) {
  const auto manifest = read_json(dir / "manifest.json");
  try {
    const auto m = manifest.at("m").get<Eigen::Index>();
    const auto n = manifest.at("n").get<Eigen::Index>();
    if (m != rep_out->dim() || n != rep_in->dim()) {
      throw ParseError(dir.string() + ": basis shape does not match representations");
    }
    const auto mode = manifest.at("mode").get<std::string>();
    solver::ConstraintSystem sys;
    if (mode == "standard") {
      sys = solver::build_standard(rep_in, rep_out);
    } else if (mode == "relaxed") {
      const auto& G = rep_in->group();
      std::vector<groups::ElementIndex> gens;
      for (const auto& p : manifest.at("k_generators")) {
        auto idx = G->index_of(p.get<groups::Perm>());
        if (!idx) throw ParseError(dir.string() + ": K generator not in the group");
        gens.push_back(*idx);
      }
      sys = solver::build_relaxed(rep_in, rep_out,
                                  groups::subgroup_generate(G, gens));
    } else {
      throw ParseError(dir.string() + ": unknown mode '" + mode + "'");
    }
    if (sys.blocks.size() != manifest.at("blocks").get<std::size_t>()) {
      throw ParseError(dir.string() + ": block count disagrees with manifest");
    }

    solver::WeightBasis basis;
    basis.system = std::move(sys);
    basis.null_threshold = manifest.at("null_threshold").get<double>();
    basis.sigma_max = manifest.at("sigma_max").get<double>();
    const auto sv = manifest.at("singular_values").get<std::vector<double>>();
    basis.singular_values = Eigen::Map<const Eigen::VectorXd>(
        sv.data(), static_cast<Eigen::Index>(sv.size()));
    const auto files = manifest.at("files").get<std::vector<std::string>>();
    if (files.size() != manifest.at("rank").get<std::size_t>()) {
      throw ParseError(dir.string() + ": rank disagrees with file list");
    }
    for (const auto& f : files) {
      Eigen::MatrixXd b = read_matrix_csv(dir / f);
      if (b.rows() != m || b.cols() != n) {
        throw ParseError((dir / f).string() + ": wrong matrix shape");
      }
      basis.matrices.push_back(std::move(b));
    }
    return basis;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(dir.string() + "/manifest.json: " + e.what());
  }
}

void save_checkpoint(const network::Network& net, const fs::path& dir) {
  net.validate();
  nlohmann::json layers = nlohmann::json::array();
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const auto& l = net.layers[i];
    const std::string sub = "layer_" + std::to_string(i);
    export_basis(*l.basis, dir / sub);
    write_matrix_csv(dir / sub / "coeffs.csv", l.coeffs);
    write_matrix_csv(dir / sub / "bias.csv", l.bias_coeffs);
    const auto manifest = basis_manifest(*l.basis);
    layers.push_back({{"in_dim", l.in_dim()},
                      {"out_dim", l.out_dim()},
                      {"mode", manifest["mode"]},
                      {"k_generators", manifest["k_generators"]},
                      {"activation", network::to_string(l.activation)},
                      {"has_bias", l.has_bias()},
                      {"dir", sub}});
  }
  write_text(dir / "checkpoint.json",
             nlohmann::json{{"layers", layers}}.dump(2) + "\n");
}

network::Network load_checkpoint(const fs::path& dir,
                                 const std::vector<reps::RepPtr>& rep_chain) {
  const auto manifest = read_json(dir / "checkpoint.json");
  network::Network net;
  try {
    const auto& layers = manifest.at("layers");
    if (rep_chain.size() != layers.size() + 1) {
      throw ParseError(dir.string() + ": representation chain length mismatch");
    }
    for (std::size_t i = 0; i < layers.size(); ++i) {
      const auto& lj = layers[i];
      const fs::path sub = dir / lj.at("dir").get<std::string>();
      auto basis = std::make_shared<const solver::WeightBasis>(
          load_basis(sub, rep_chain[i], rep_chain[i + 1]));
      auto layer = network::make_layer(
          basis, network::activation_from_string(lj.at("activation").get<std::string>()),
          lj.at("has_bias").get<bool>());
      const Eigen::MatrixXd coeffs = read_matrix_csv(sub / "coeffs.csv");
      if (coeffs.size() != layer.coeffs.size()) {
        throw ParseError((sub / "coeffs.csv").string() + ": wrong length");
      }
      if (coeffs.size()) layer.coeffs = coeffs.col(0);
      if (layer.has_bias()) {
        const Eigen::MatrixXd bias = read_matrix_csv(sub / "bias.csv");
        if (bias.size() != layer.bias_coeffs.size()) {
          throw ParseError((sub / "bias.csv").string() + ": wrong length");
        }
        layer.bias_coeffs = bias.col(0);
      }
      net.layers.push_back(std::move(layer));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(dir.string() + "/checkpoint.json: " + e.what());
  }
  net.validate();
  return net;
}

}  // namespace symbreak::io
