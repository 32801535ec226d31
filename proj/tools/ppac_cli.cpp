// Command-line front end for the circuit library: evaluation, degree oracles,
// parse-subcircuit enumeration, the composition matching, the pairing walk,
// the reductions and the bundled fixtures.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ppac/easiness.hpp"
#include "ppac/fixtures.hpp"
#include "ppac/oracle.hpp"
#include "ppac/randgen.hpp"

using nlohmann::json;
using namespace ppac;

namespace {

struct Options {
  bool as_json = false;
  std::uint64_t cap = 1u << 20;
  std::uint64_t steps = 1u << 20;
  std::uint64_t seed = 1;
  int parallel = 1;
};

int g_exit = 0;

void emit(const Options& o, const json& payload, const std::string& text) {
  if (o.as_json)
    std::cout << payload.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

// Assembles the PPA-circuit from D, F and an optional tail file.
PpaCircuit load_ppa(const std::string& dpath, const std::string& fpath,
                    const std::string& tail) {
  std::optional<Circuit> t;
  if (!tail.empty()) t = load_circuit(tail);
  return make_ppa_circuit(load_circuit(dpath), load_circuit(fpath), t);
}

GnVertex parse_vertex(const EasinessInstance& inst, const std::string& text) {
  if (!text.empty() &&
      text.find_first_not_of("01") == std::string::npos &&
      static_cast<int>(text.size()) == inst.n)
    return GnVertex::of(assignment_from_string(text));
  return GnVertex::of(marking_from_string(inst.host, text));
}

json marking_json(const Circuit& c, const Marking& s) {
  return marking_to_string(c, s);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic circuits over F2: parse subcircuits, the "
               "composition matching, and the leaf-search reductions"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.as_json, "machine-readable output");
  app.add_option("--cap", opt.cap, "enumeration/term cap");
  app.add_option("--steps", opt.steps, "walk step cap");
  app.add_option("--seed", opt.seed, "seed for randomized commands");
  app.add_option("--parallel", opt.parallel, "worker count (advisory)");

  std::string ckt, dpath, fpath, tail, point, zero, va, vb, out_prefix, start;
  bool maximal_only = false;

  auto* eval = app.add_subcommand("eval", "evaluate a circuit at a point");
  eval->add_option("circuit", ckt)->required();
  eval->add_option("point", point)->required();
  eval->callback([&] {
    Circuit c = load_circuit(ckt);
    std::vector<Bit> v = evaluate(c, assignment_from_string(point));
    std::string text;
    for (Bit b : v) text += b ? '1' : '0';
    emit(opt, json{{"value", text}}, text);
  });

  auto* cdeg = app.add_subcommand("cdeg", "syntactic circuit degree");
  cdeg->add_option("circuit", ckt)->required();
  cdeg->callback([&] {
    std::string d = circuit_degree(load_circuit(ckt)).at(0).str();
    emit(opt, json{{"cdeg", d}}, d);
  });

  auto* md = app.add_subcommand("mdeg", "multilinear degree");
  md->add_option("circuit", ckt)->required();
  md->callback([&] {
    std::optional<int> d = mdeg(load_circuit(ckt));
    emit(opt, json{{"mdeg", d ? json(*d) : json(nullptr)}},
         d ? std::to_string(*d) : "zero polynomial");
  });

  auto* formal = app.add_subcommand("formal", "formal polynomial mod 2");
  formal->add_option("circuit", ckt)->required();
  formal->callback([&] {
    FormalPoly p = formal_polynomial(load_circuit(ckt), opt.cap);
    json terms = json::array();
    for (const Monomial& m : p.monomials) terms.push_back(m.to_string());
    emit(opt, json{{"monomials", terms}}, p.to_string());
  });

  auto* en = app.add_subcommand("enumerate", "parse subcircuits");
  en->add_option("circuit", ckt)->required();
  en->add_flag("--maximal", maximal_only, "only maximal parse subcircuits");
  en->callback([&] {
    Circuit c = load_circuit(ckt);
    std::vector<Marking> all = maximal_only
                                   ? enumerate_maximal(c, opt.cap)
                                   : enumerate_parse_subcircuits(c, opt.cap);
    json arr = json::array();
    std::string text;
    for (const Marking& m : all) {
      arr.push_back({{"marking", marking_to_string(c, m)},
                     {"monomial", monomial_of(c, m).to_string()}});
      text += marking_to_string(c, m) + "  " + monomial_of(c, m).to_string() + "\n";
    }
    text += "count " + std::to_string(all.size());
    emit(opt, json{{"count", all.size()}, {"subcircuits", arr}}, text);
  });

  auto* prop1 = app.add_subcommand(
      "check-prop1", "parse-subcircuit sum equals the formal expansion");
  prop1->add_option("circuit", ckt)->required();
  prop1->callback([&] {
    Prop1Report r = check_prop1(load_circuit(ckt), opt.cap);
    emit(opt,
         json{{"ok", r.ok},
              {"pointwise_ok", r.pointwise_ok},
              {"subcircuits", r.subcircuit_count},
              {"surviving_monomials", r.from_subcircuits.monomials.size()},
              {"mismatch", r.mismatch}},
         (r.ok ? "ok"
               : "MISMATCH " + r.mismatch +
                     (r.pointwise_ok ? " (pointwise ok)" : " (pointwise BAD)")) +
             " — " + std::to_string(r.subcircuit_count) + " subcircuits, " +
             std::to_string(r.from_subcircuits.monomials.size()) +
             " surviving monomials");
    if (!r.ok) g_exit = 3;
  });

  auto* comp = app.add_subcommand("compose-ppa", "composition of D and F");
  comp->add_option("d", dpath)->required();
  comp->add_option("f", fpath)->required();
  comp->add_option("--tail", tail, "tail circuit (cdeg < n)");
  comp->add_option("-o,--out", out_prefix, "write the flattened circuit here");
  comp->callback([&] {
    PpaCircuit pc = load_ppa(dpath, fpath, tail);
    std::string text = print_circuit(pc.flattened);
    if (!out_prefix.empty()) write_file(out_prefix, text);
    emit(opt, json{{"circuit", text}}, text);
  });

  auto* match = app.add_subcommand("match", "matching partner of a maximal "
                                            "parse subcircuit");
  match->add_option("d", dpath)->required();
  match->add_option("f", fpath)->required();
  match->add_option("marking", va)->required();
  match->add_option("--tail", tail);
  match->callback([&] {
    PpaCircuit pc = load_ppa(dpath, fpath, tail);
    Marking s = marking_from_string(pc.flattened, va);
    Marking t = mu(pc.comp, pc.flattened, s);
    emit(opt, json{{"partner", marking_json(pc.flattened, t)}},
         marking_to_string(pc.flattened, t));
  });

  auto* vm = app.add_subcommand("verify-matching",
                                "mu is a fixed-point-free involution");
  vm->add_option("d", dpath)->required();
  vm->add_option("f", fpath)->required();
  vm->add_option("--tail", tail);
  vm->callback([&] {
    PpaCircuit pc = load_ppa(dpath, fpath, tail);
    MatchingReport r = verify_matching(pc, opt.cap);
    json v = json::array();
    std::string text = r.ok ? "ok" : "VIOLATIONS";
    text += " — " + std::to_string(r.maximal_count) + " maximal subcircuits";
    for (const std::string& s : r.violations) {
      v.push_back(s);
      text += "\n  " + s;
    }
    emit(opt, json{{"ok", r.ok}, {"maximal", r.maximal_count}, {"violations", v}},
         text);
    if (!r.ok) g_exit = 3;
  });

  auto* ph = app.add_subcommand("phi", "pairing function on G_N");
  ph->add_option("d", dpath)->required();
  ph->add_option("f", fpath)->required();
  ph->add_option("--tail", tail);
  ph->add_option("--point", point, "the CNSS point a")->required();
  ph->add_option("--v", va, "pivot vertex (bits or marking)")->required();
  ph->add_option("--w", vb, "paired vertex")->required();
  ph->callback([&] {
    EasinessInstance inst = make_easiness_instance(
        load_ppa(dpath, fpath, tail), assignment_from_string(point));
    GnVertex r = phi(inst, parse_vertex(inst, va), parse_vertex(inst, vb));
    emit(opt, json{{"result", inst.vertex_to_string(r)}},
         inst.vertex_to_string(r));
  });

  auto* sc = app.add_subcommand("solve-cnss", "walk the pairing graph to a "
                                              "satisfying point of C' + L_a");
  sc->add_option("d", dpath)->required();
  sc->add_option("f", fpath)->required();
  sc->add_option("--tail", tail);
  sc->add_option("--point", point)->required();
  sc->add_option("--trace", out_prefix, "write the walk as JSON lines");
  sc->callback([&] {
    EasinessInstance inst = make_easiness_instance(
        load_ppa(dpath, fpath, tail), assignment_from_string(point));
    std::ofstream trace;
    std::function<void(const HEdge&)> on_step;
    if (!out_prefix.empty()) {
      trace.open(out_prefix);
      on_step = [&](const HEdge& e) {
        trace << json{{"pivot", inst.vertex_to_string(e.pivot)},
                      {"other", inst.vertex_to_string(e.other)}}
                     .dump()
              << "\n";
      };
    }
    Assignment b = solve_cnss_via_leaf(inst, opt.steps, on_step);
    emit(opt, json{{"answer", assignment_to_string(b)}}, assignment_to_string(b));
  });

  auto* sch = app.add_subcommand("solve-chevalley",
                                 "find another zero of a PPA-circuit");
  sch->add_option("d", dpath)->required();
  sch->add_option("f", fpath)->required();
  sch->add_option("--tail", tail);
  sch->add_option("--zero", zero, "the known zero a")->required();
  sch->callback([&] {
    ChevalleyInstance in{load_ppa(dpath, fpath, tail),
                         assignment_from_string(zero)};
    CnssInstance cn = chevalley_to_cnss(in);
    Assignment b = solve_cnss_via_leaf(make_easiness_instance(cn), opt.steps);
    b = chevalley_back_map(in, cnss_back_map(cn, b));
    emit(opt, json{{"answer", assignment_to_string(b)}}, assignment_to_string(b));
  });

  auto* red = app.add_subcommand("reduce", "problem interreductions");
  red->require_subcommand(1);

  auto* rl = red->add_subcommand("leaf", "leaf instance -> Chevalley");
  rl->add_option("leaf", ckt)->required();
  rl->add_option("-o,--out", out_prefix, "write <out>_d.ckt and <out>_f.ckt");
  rl->callback([&] {
    ChevalleyInstance ch = leaf_to_chevalley(load_leaf(ckt));
    std::string d = print_circuit(ch.circuit.comp.d);
    std::string f = print_circuit(ch.circuit.comp.f);
    std::string t = print_circuit(*ch.circuit.tail);
    if (!out_prefix.empty()) {
      write_file(out_prefix + "_d.ckt", d);
      write_file(out_prefix + "_f.ckt", f);
      write_file(out_prefix + "_tail.ckt", t);
    }
    emit(opt,
         json{{"d", d}, {"f", f}, {"tail", t},
              {"zero", assignment_to_string(ch.zero)}},
         "zero " + assignment_to_string(ch.zero) +
             (out_prefix.empty() ? "\n" + d + f + t : ""));
  });

  auto* r3 = red->add_subcommand("3sat", "parity-3SAT formula -> circuit");
  r3->add_option("cnf", ckt)->required();
  r3->add_option("-o,--out", out_prefix);
  r3->callback([&] {
    std::ifstream in(ckt);
    if (!in) throw Error("cannot read " + ckt);
    Circuit img = threesat_to_circuit(parse_dimacs(in));
    std::string text = print_circuit(img);
    if (!out_prefix.empty()) write_file(out_prefix, text);
    emit(opt, json{{"circuit", text}}, text);
  });

  auto* rc = red->add_subcommand("cnss-to-chevalley", "CNSS -> Chevalley");
  rc->add_option("d", dpath)->required();
  rc->add_option("f", fpath)->required();
  rc->add_option("--tail", tail);
  rc->add_option("--point", point)->required();
  rc->callback([&] {
    CnssInstance in{load_ppa(dpath, fpath, tail), assignment_from_string(point)};
    CnssToChevalley r = cnss_to_chevalley(in);
    if (r.solved) {
      emit(opt, json{{"solved", true}, {"answer", assignment_to_string(r.answer)}},
           "solved: " + assignment_to_string(r.answer));
      return;
    }
    emit(opt,
         json{{"solved", false},
              {"tail", print_circuit(*r.instance->circuit.tail)},
              {"zero", assignment_to_string(r.instance->zero)}},
         "zero " + assignment_to_string(r.instance->zero) + "\n" +
             print_circuit(*r.instance->circuit.tail));
  });

  auto* rch = red->add_subcommand("chevalley-to-cnss", "Chevalley -> CNSS");
  rch->add_option("d", dpath)->required();
  rch->add_option("f", fpath)->required();
  rch->add_option("--tail", tail);
  rch->add_option("--zero", zero)->required();
  rch->callback([&] {
    ChevalleyInstance in{load_ppa(dpath, fpath, tail),
                         assignment_from_string(zero)};
    CnssInstance r = chevalley_to_cnss(in);
    emit(opt,
         json{{"tail", print_circuit(*r.circuit.tail)},
              {"point", assignment_to_string(r.point)}},
         "point " + assignment_to_string(r.point) + "\n" +
             print_circuit(*r.circuit.tail));
  });

  auto* vh = app.add_subcommand("verify-hardness",
                                "six-case degree-parity verifier");
  vh->add_option("leaf", ckt)->required();
  vh->callback([&] {
    DegreeParityReport r = verify_degree_parity(load_leaf(ckt));
    json v = json::array();
    std::string text = r.ok ? "ok" : "VIOLATIONS";
    for (const std::string& s : r.violations) {
      v.push_back(s);
      text += "\n  " + s;
    }
    emit(opt, json{{"ok", r.ok}, {"violations", v}}, text);
    if (!r.ok) g_exit = 3;
  });

  auto* leaf = app.add_subcommand("leaf", "leaf-instance utilities");
  leaf->require_subcommand(1);
  auto* ls = leaf->add_subcommand("solve", "walk the path from a leaf");
  ls->add_option("leaf", ckt)->required();
  ls->add_option("--start", start, "starting leaf (default omega)");
  ls->callback([&] {
    LeafInstance li = load_leaf(ckt);
    std::size_t s = start.empty()
                        ? assignment_index(li.omega)
                        : assignment_index(assignment_from_string(start));
    std::size_t b = follow_path(li, s, opt.steps);
    std::string text = assignment_to_string(assignment_from_index(b, li.n));
    emit(opt, json{{"answer", text}}, text);
  });

  auto* fx = app.add_subcommand("fixtures", "write the bundled fixtures");
  fx->add_option("-o,--out", out_prefix, "output directory")->required();
  fx->callback([&] {
    write_file(out_prefix + "/two_clause.ckt", print_circuit(two_clause_product()));
    write_file(out_prefix + "/l100.ckt", print_circuit(lagrange100()));
    write_file(out_prefix + "/path.leaf", print_leaf(path_leaf()));
    write_file(out_prefix + "/matched_pairs.leaf", print_leaf(matched_pairs_leaf()));
    LeafInstance b3 = bitflip_leaf(3);
    write_file(out_prefix + "/bitflip3_d.ckt", print_circuit(*b3.d));
    write_file(out_prefix + "/bitflip3_f.ckt", print_circuit(*b3.f));
    write_file(out_prefix + "/bitflip3.leaf",
               "leaf bitflip3\nbits 3\nomega 000\n"
               "neighbors d bitflip3_d.ckt f bitflip3_f.ckt\nend\n");
    write_file(out_prefix + "/sample.cnf",
               "p cnf 3 3\n1 2 -3 0\n-2 3 0\n3 -1 0\n");
    emit(opt, json{{"dir", out_prefix}}, "fixtures written to " + out_prefix);
  });

  // Let global flags (--json, --cap, ...) appear after a subcommand too.
  std::vector<CLI::App*> pending{&app};
  while (!pending.empty()) {
    CLI::App* cur = pending.back();
    pending.pop_back();
    for (CLI::App* sub : cur->get_subcommands({})) {
      sub->fallthrough();
      pending.push_back(sub);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return g_exit;
}
