// Command line front end. Exit codes: 0 definitive answer, 1 bad input,
// 2 inconclusive within budget, 3 broken internal invariant.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cpt/errors.hpp"
#include "cpt/io.hpp"
#include "cpt/modular.hpp"
#include "cpt/normalize.hpp"
#include "cpt/oracle.hpp"
#include "cpt/synthesize.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cpt::Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw cpt::Error("cannot write '" + path + "'");
  out << text;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    spill(out_path, text);
}

int cmd_classify(const std::string& file, int max_tree, long expansions,
                 const std::string& emit_dir) {
  cpt::Poset p = cpt::parse_poset(slurp(file));
  cpt::SearchBudget budget;
  if (max_tree > 0) budget.max_tree_vertices = max_tree;
  if (expansions > 0) budget.max_expansions = expansions;
  cpt::Classification c = cpt::classify(p, budget);
  std::cout << "CI " << yesno(c.is_ci) << ", CPT " << yesno(c.is_cpt) << ", dually "
            << yesno(c.is_dually_cpt) << ", strongly " << yesno(c.is_strongly_cpt)
            << '\n';
  if (!c.exhausted_note.empty()) std::cout << c.exhausted_note << '\n';
  if (!emit_dir.empty()) {
    std::filesystem::create_directories(emit_dir);
    if (c.cpt_model)
      spill(emit_dir + "/model.txt", cpt::print_model(*c.cpt_model));
    if (c.dual_model)
      spill(emit_dir + "/dual-model.txt", cpt::print_model(*c.dual_model));
  }
  return 0;
}

void print_module_tree(const cpt::ModuleTreeNode& node, int depth, std::ostream& out) {
  out << std::string(static_cast<size_t>(2 * depth), ' ');
  if (node.children.empty()) {
    out << "leaf " << node.elements.front() << '\n';
    return;
  }
  out << to_string(*node.kind) << " (";
  for (size_t i = 0; i < node.elements.size(); ++i)
    out << (i ? " " : "") << node.elements[i];
  out << ")\n";
  for (const auto& child : node.children) print_module_tree(child, depth + 1, out);
}

void module_tree_dot(const cpt::ModuleTreeNode& node, int* next, int my_id,
                     std::ostream& out) {
  if (node.children.empty()) {
    out << "  n" << my_id << " [label=\"" << node.elements.front() << "\"];\n";
    return;
  }
  out << "  n" << my_id << " [label=\"" << to_string(*node.kind) << "\"];\n";
  for (const auto& child : node.children) {
    int child_id = (*next)++;
    out << "  n" << my_id << " -- n" << child_id << ";\n";
    module_tree_dot(child, next, child_id, out);
  }
}

int cmd_mdtree(const std::string& file, bool dot) {
  cpt::Poset p = cpt::parse_poset(slurp(file));
  cpt::ModuleTreeNode root = cpt::module_tree(p);
  if (!dot) {
    print_module_tree(root, 0, std::cout);
    return 0;
  }
  std::cout << "graph mdtree {\n";
  int next = 1;
  module_tree_dot(root, &next, 0, std::cout);
  std::cout << "}\n";
  return 0;
}

int cmd_verify(const std::string& poset_file, const std::string& model_file) {
  cpt::Poset p = cpt::parse_poset(slurp(poset_file));
  cpt::CptModel m = cpt::parse_model(slurp(model_file));
  cpt::RealizationReport rep = cpt::check_realizes(m, p);
  if (rep.ok) {
    std::cout << "ok\n";
  } else {
    for (const auto& v : rep.violations) std::cout << v << '\n';
  }
  return 0;
}

int cmd_normalize(const std::string& poset_file, const std::string& model_file,
                  const std::string& out_path) {
  cpt::Poset p = cpt::parse_poset(slurp(poset_file));
  cpt::CptModel m = cpt::parse_model(slurp(model_file));
  cpt::NormalizedModel n = cpt::normalize(m, p);
  emit(out_path, cpt::print_model(n.model));
  for (const auto& mod : n.blocked_modules) {
    std::cout << "blocked module:";
    for (const auto& e : mod) std::cout << ' ' << e;
    std::cout << '\n';
  }
  if (n.blocked_modules.empty()) std::cout << "no blocked modules\n";
  return 0;
}

int cmd_synthesize(const std::string& p_file, const std::string& model_file,
                   const std::string& dual_model_file, const std::string& q_file,
                   const std::string& out_path) {
  cpt::Poset p = cpt::parse_poset(slurp(p_file));
  cpt::CptModel mp = cpt::parse_model(slurp(model_file));
  cpt::CptModel mpd = cpt::parse_model(slurp(dual_model_file));
  cpt::Poset q = cpt::parse_poset(slurp(q_file));
  cpt::CptModel out = cpt::build_associated_representation(p, mp, mpd, q);
  emit(out_path, cpt::print_model(out));
  return 0;
}

int cmd_export_dot(const std::string& file) {
  std::string text = slurp(file);
  std::istringstream in(text);
  std::string first;
  in >> first;
  if (first == "tree:")
    std::cout << cpt::model_to_dot(cpt::parse_model(text));
  else
    std::cout << cpt::poset_to_dot(cpt::parse_poset(text));
  return 0;
}

int cmd_atlas(int n, const std::string& out_path) {
  std::ostringstream csv;
  csv << "id,size,covers,ci,cpt,dually_cpt,strongly_cpt\n";
  if (n > 0) {
    auto posets = cpt::enumerate_posets(n);
    int id = 0;
    for (const auto& p : posets) {
      csv << id++ << ',' << n << ',';
      auto covers = p.cover_pairs();
      for (size_t i = 0; i < covers.size(); ++i)
        csv << (i ? ";" : "") << covers[i].first << '<' << covers[i].second;
      cpt::Classification c = cpt::classify(p);
      csv << ',' << yesno(c.is_ci) << ',' << yesno(c.is_cpt) << ','
          << yesno(c.is_dually_cpt) << ',' << yesno(c.is_strongly_cpt) << '\n';
    }
  }
  emit(out_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"containment-of-paths-in-a-tree poset toolkit"};
  app.require_subcommand(1);

  std::string poset_file, model_file, dual_model_file, target_file, out_path, emit_dir;
  int max_tree = 0;
  long expansions = 0;
  bool dot = false;
  int atlas_n = 0;

  auto* classify = app.add_subcommand("classify", "classify a poset by complete search");
  classify->add_option("poset", poset_file)->required();
  classify->add_option("--max-tree", max_tree, "host tree vertex cap");
  classify->add_option("--expansions", expansions, "search expansion cap");
  classify->add_option("--emit-models", emit_dir, "write witness models here");

  auto* mdtree = app.add_subcommand("mdtree", "print the modular decomposition tree");
  mdtree->add_option("poset", poset_file)->required();
  mdtree->add_flag("--dot", dot, "emit DOT instead of text");

  auto* verify = app.add_subcommand("verify", "check that a model realizes a poset");
  verify->add_option("poset", poset_file)->required();
  verify->add_option("model", model_file)->required();

  auto* normalize = app.add_subcommand("normalize", "normalize a model");
  normalize->add_option("poset", poset_file)->required();
  normalize->add_option("model", model_file)->required();
  normalize->add_option("-o,--out", out_path, "output model file");

  auto* synthesize =
      app.add_subcommand("synthesize", "build a model of an associated poset");
  synthesize->add_option("poset", poset_file)->required();
  synthesize->add_option("model", model_file)->required();
  synthesize->add_option("dual-model", dual_model_file)->required();
  synthesize->add_option("target", target_file)->required();
  synthesize->add_option("-o,--out", out_path, "output model file");

  auto* export_dot = app.add_subcommand("export-dot", "emit DOT for a poset or model file");
  export_dot->add_option("file", poset_file)->required();

  auto* atlas = app.add_subcommand("atlas", "classification table for all n-element posets");
  atlas->add_option("n", atlas_n)->required()->check(CLI::Range(0, 7));
  atlas->add_option("--out", out_path, "CSV output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(classify))
      return cmd_classify(poset_file, max_tree, expansions, emit_dir);
    if (app.got_subcommand(mdtree)) return cmd_mdtree(poset_file, dot);
    if (app.got_subcommand(verify)) return cmd_verify(poset_file, model_file);
    if (app.got_subcommand(normalize)) return cmd_normalize(poset_file, model_file, out_path);
    if (app.got_subcommand(synthesize))
      return cmd_synthesize(poset_file, model_file, dual_model_file, target_file, out_path);
    if (app.got_subcommand(export_dot)) return cmd_export_dot(poset_file);
    if (app.got_subcommand(atlas)) return cmd_atlas(atlas_n, out_path);
  } catch (const cpt::BudgetExceededError& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return 2;
  } catch (const cpt::SuspicionError& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return 3;
  } catch (const cpt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
