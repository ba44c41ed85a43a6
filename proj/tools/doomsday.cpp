#include <chrono>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "doomsday/de_perfect.hpp"
#include "doomsday/imperfect.hpp"
#include "doomsday/json_io.hpp"
#include "doomsday/oracle.hpp"
#include "doomsday/witness.hpp"

using json = nlohmann::ordered_json;
using namespace doomsday;

namespace {

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

json lasso_json(const Lasso& l) {
  json j;
  j["stem"]["states"] = l.stem.states;
  j["stem"]["actions"] = l.stem.actions;
  j["cycle"]["states"] = l.cycle.states;
  j["cycle"]["actions"] = l.cycle.actions;
  return j;
}

void emit(const json& report, const std::string& out) {
  std::string text = report.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
}

int solve_main(const std::string& arena_file, const std::string& obj_file,
               const std::string& obs_file, bool want_witness, bool verify,
               bool no_timing, const std::string& json_out) {
  json report;
  try {
    double t0 = now_s();
    Arena a = parse_arena(read_file(arena_file));
    ObjectiveProfile profile = parse_objectives(read_file(obj_file), a);
    double t_parse = now_s() - t0;

    report["instance"] = instance_digest(a, profile);
    report["class"] = class_name(profile.cls);

    if (!obs_file.empty()) {
      if (profile.cls != ObjClass::Safety && profile.cls != ObjClass::Reach) {
        json err;
        err["error"] = "UnsupportedClass";
        err["detail"] =
            "imperfect-information solving supports safety and reachability";
        emit(err, json_out);
        return 4;
      }
      ImperfectArena ia = parse_observations(read_file(obs_file), a);
      double t1 = now_s();
      DeDecision d = decide_de_imperfect(ia, profile);
      double t_solve = now_s() - t1;
      report["imperfect"] = true;
      report["exists"] = d.exists;
      if (d.exists && want_witness)
        report["witness"]["main"] = lasso_json(*d.witness_lasso)
            .flatten()
            .unflatten();  // keep key order stable
      bool verified = true;
      if (d.exists && verify) {
        for (const auto& o : profile.players)
          verified = verified && eval_lasso(*d.witness_lasso, o);
        report["verified"] = verified;
      }
      if (!no_timing) {
        report["timing"]["parse"] = t_parse;
        report["timing"]["solve"] = t_solve;
      }
      emit(report, json_out);
      if (d.exists && verify && !verified)
        return 3;
      return d.exists ? 0 : 1;
    }

    DeDecision d = decide_de(a, profile);
    report["exists"] = d.exists;
    report["regions"] = json::array();
    for (const auto& r : d.regions)
      report["regions"].push_back(region_ids(r));
    double t_synth = 0, t_verify = 0;
    bool verified = true;
    if (d.exists && (want_witness || verify)) {
      double t1 = now_s();
      DoomsdayWitness w = synthesize_profile(a, profile, d);
      t_synth = now_s() - t1;
      if (want_witness)
        report["witness"] = json::parse(serialize_witness(w));
      if (verify) {
        double t2 = now_s();
        auto rep = check_witness(a, profile, w);
        t_verify = now_s() - t2;
        verified = rep.ok();
        report["verified"] = verified;
      }
    } else if (d.exists && d.witness_path) {
      report["pivot"]["state"] = d.pivot_state;
      report["pivot"]["player"] = d.pivot_player;
    }
    if (!no_timing) {
      report["timing"]["parse"] = t_parse;
      report["timing"]["regions"] = d.regions_seconds;
      report["timing"]["emptiness"] = d.search_seconds;
      report["timing"]["synthesis"] = t_synth;
      report["timing"]["verification"] = t_verify;
    }
    emit(report, json_out);
    if (d.exists && verify && !verified)
      return 3;
    return d.exists ? 0 : 1;
  } catch (const Error& e) {
    json err;
    err["error"] = err_name(e.code());
    err["detail"] = e.what();
    emit(err, json_out);
    return 2;
  }
}

int check_main(const std::string& arena_file, const std::string& obj_file,
               const std::string& witness_file, const std::string& json_out) {
  try {
    Arena a = parse_arena(read_file(arena_file));
    ObjectiveProfile profile = parse_objectives(read_file(obj_file), a);
    DoomsdayWitness w = parse_witness(read_file(witness_file), a);
    auto rep = check_witness(a, profile, w);
    json report;
    report["cond1"] = rep.cond1;
    report["cond2"] = json::array();
    for (char c : rep.cond2)
      report["cond2"].push_back(c != 0);
    report["counterexamples"] = json::array();
    for (const auto& bad : rep.counterexamples) {
      json cj;
      cj["player"] = bad.player;
      cj["wins_instead"] = bad.against;
      cj["lasso"] = lasso_json(bad.lasso);
      report["counterexamples"].push_back(cj);
    }
    report["ok"] = rep.ok();
    emit(report, json_out);
    return rep.ok() ? 0 : 1;
  } catch (const Error& e) {
    json err;
    err["error"] = err_name(e.code());
    err["detail"] = e.what();
    emit(err, json_out);
    return 2;
  }
}

int gen_main(const std::string& kind, int states, int players, int actions,
             int k_targets, int max_priority, uint64_t seed,
             const std::string& cls, const std::string& out_prefix) {
  try {
    std::mt19937_64 rng(seed);
    if (kind == "random") {
      Arena a = random_arena(states, players, actions, rng());
      write_file(out_prefix + ".arena.json", serialize_arena(a));
      if (!cls.empty()) {
        auto profile = random_profile(a, class_from_name(cls), rng());
        write_file(out_prefix + ".objectives.json",
                   serialize_objectives(profile, a));
      }
      return 0;
    }
    ReductionInstance inst;
    json source;
    if (kind == "buchi-red") {
      Arena src = random_arena(states, 2, actions, rng());
      Region t(src.n_states());
      std::uniform_int_distribution<int> coin(0, 1);
      for (int s = 0; s < src.n_states(); ++s)
        if (coin(rng))
          t.set(s);
      inst = gen_buchi_reduction(src, t);
      source["target"] = region_ids(inst.source_buchi);
    } else if (kind == "conj-parity-red" || kind == "disj-parity-red") {
      Arena src = random_arena(states, 2, actions, rng());
      std::uniform_int_distribution<int> pr(0, max_priority);
      std::vector<int> p1(src.n_states()), p2(src.n_states());
      for (int s = 0; s < src.n_states(); ++s) {
        p1[s] = pr(rng);
        p2[s] = pr(rng);
      }
      inst = kind == "conj-parity-red" ? gen_conj_parity_reduction(src, p1, p2)
                                       : gen_disj_parity_reduction(src, p1, p2);
      source["p1"] = inst.source_p1;
      source["p2"] = inst.source_p2;
    } else if (kind == "multireach-red") {
      Arena src = random_arena(states, 2, actions, rng());
      std::uniform_int_distribution<int> coin(0, 3);
      std::vector<Region> targets(k_targets, Region(src.n_states()));
      for (auto& t : targets)
        for (int s = 0; s < src.n_states(); ++s)
          if (coin(rng) == 0)
            t.set(s);
      inst = gen_multireach_to_safety(src, targets);
      source["targets"] = json::array();
      for (const auto& t : inst.source_targets)
        source["targets"].push_back(region_ids(t));
    } else {
      raise(Err::BadParams, "unknown generator kind '" + kind + "'");
    }
    write_file(out_prefix + ".arena.json", serialize_arena(inst.arena));
    write_file(out_prefix + ".objectives.json",
               serialize_objectives(inst.profile, inst.arena));
    source["arena"] = json::parse(serialize_arena(inst.source));
    source["winner"] = inst.source_winner;
    write_file(out_prefix + ".source.json", source.dump(2) + "\n");
    return 0;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

int compare_main(int per_class, int max_states, int max_players,
                 int parity_instances, int parity_states, uint64_t seed,
                 const std::string& json_out) {
  try {
    json report;
    int total_mismatch = 0;
    auto run = [&](ObjClass cls, int instances, int states) {
      int bound = oracle_max_states(cls);
      if (states > bound)
        raise(Err::TooLarge,
              std::string(class_name(cls)) + " suite needs <= " +
                  std::to_string(bound) + " states (set "
                  "DOOMSDAY_ORACLE_MAX_STATES to raise the oracle bound)");
      SuiteParams p;
      p.cls = cls;
      p.instances = instances;
      p.max_states = states;
      p.max_players = max_players;
      p.seed = seed;
      SuiteResult r = run_differential_suite(p);
      json cj;
      cj["instances"] = r.instances;
      cj["positives"] = r.positives;
      cj["mismatches"] = r.mismatches;
      report["classes"][class_name(cls)] = cj;
      total_mismatch += r.mismatches;
      for (size_t d = 0; d < r.dumps.size(); ++d) {
        std::string base = std::string("mismatch_") + class_name(cls) + "_" +
                           std::to_string(d);
        write_file(base + ".arena.json", serialize_arena(r.dumps[d].arena));
        write_file(base + ".objectives.json",
                   serialize_objectives(r.dumps[d].profile, r.dumps[d].arena));
      }
    };
    run(ObjClass::Safety, per_class, max_states);
    run(ObjClass::Reach, per_class, max_states);
    run(ObjClass::Buchi, per_class, max_states);
    run(ObjClass::CoBuchi, per_class, max_states);
    if (parity_instances > 0)
      run(ObjClass::Parity, parity_instances, parity_states);
    report["mismatches"] = total_mismatch;
    emit(report, json_out);
    return total_mismatch == 0 ? 0 : 1;
  } catch (const Error& e) {
    json err;
    err["error"] = err_name(e.code());
    err["detail"] = e.what();
    emit(err, json_out);
    return 2;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"doomsday equilibrium solver for n-player games on graphs"};
  app.require_subcommand(1);

  std::string arena_file, obj_file, obs_file, witness_file, json_out;
  bool want_witness = false, verify = false, no_timing = false;

  auto* solve = app.add_subcommand("solve", "decide DE existence");
  solve->add_option("arena", arena_file, "arena JSON file")->required();
  solve->add_option("objectives", obj_file, "objectives JSON file")->required();
  solve->add_flag("--witness", want_witness, "include the witness profile");
  solve->add_flag("--verify", verify, "verify the witness before reporting");
  solve->add_option("--imperfect", obs_file,
                    "observation JSON file (imperfect information)");
  solve->add_option("--json", json_out, "write the report to this file");
  solve->add_flag("--no-timing", no_timing, "omit timing fields");

  auto* check = app.add_subcommand("check", "verify a witness profile");
  check->add_option("arena", arena_file)->required();
  check->add_option("objectives", obj_file)->required();
  check->add_option("witness", witness_file)->required();
  check->add_option("--json", json_out);

  std::string kind = "random", cls;
  int states = 6, players = 2, actions = 2, k_targets = 2, max_priority = 3;
  uint64_t seed = 1;
  std::string out_prefix = "instance";
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->add_option("kind", kind,
                  "random | buchi-red | conj-parity-red | disj-parity-red | "
                  "multireach-red");
  gen->add_option("--states", states);
  gen->add_option("--players", players);
  gen->add_option("--actions", actions);
  gen->add_option("--targets", k_targets, "target sets (multireach)");
  gen->add_option("--max-priority", max_priority);
  gen->add_option("--seed", seed);
  gen->add_option("--class", cls, "emit a random profile of this class too");
  gen->add_option("--out", out_prefix, "output file prefix");

  int per_class = 50, cmp_states = 5, cmp_players = 3, parity_instances = 20,
      parity_states = 4;
  auto* compare = app.add_subcommand("compare", "solver vs oracle suite");
  compare->add_option("--per-class", per_class);
  compare->add_option("--max-states", cmp_states);
  compare->add_option("--max-players", cmp_players);
  compare->add_option("--parity-instances", parity_instances);
  compare->add_option("--parity-states", parity_states);
  compare->add_option("--seed", seed);
  compare->add_option("--json", json_out);

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed())
    return solve_main(arena_file, obj_file, obs_file, want_witness, verify,
                      no_timing, json_out);
  if (check->parsed())
    return check_main(arena_file, obj_file, witness_file, json_out);
  if (gen->parsed())
    return gen_main(kind, states, players, actions, k_targets, max_priority,
                    seed, cls, out_prefix);
  return compare_main(per_class, cmp_states, cmp_players, parity_instances,
                      parity_states, seed, json_out);
}
