// Command line front end: machines come from fst files, answers leave as
// one JSON object (or a plain line with --no-json). Exit codes: 0 for a
// finite distance or a yes, 10 for infinite or no, 2 for any input error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tdist/error.hpp"
#include "tdist/fst_format.hpp"
#include "tdist/fvdist.hpp"
#include "tdist/kcheck.hpp"
#include "tdist/metrics.hpp"
#include "tdist/nfa.hpp"
#include "tdist/oracle.hpp"
#include "tdist/reldist.hpp"
#include "tdist/scc.hpp"
#include "tdist/transducer.hpp"

namespace {

using json = nlohmann::json;
using namespace tdist;

struct Outcome {
  std::string result;
  std::optional<long long> value;
  std::optional<std::string> metric;
  std::optional<std::string> reason;
  json witnesses = json::object();
  json extra = json::object();  // command-specific top level keys
  std::string plain;
  int exit_code = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidInput, "cannot read the file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FstDocument load_document(const std::string& path) {
  try {
    return parse_fst(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.message());
  }
}

std::vector<Transducer> load_side(const std::string& path, bool sequential) {
  FstDocument doc = load_document(path);
  std::vector<Transducer> out;
  out.reserve(doc.machines.size());
  for (const MachineDesc& d : doc.machines) {
    try {
      out.push_back(build_machine(d, sequential));
    } catch (const Error& e) {
      throw Error(e.code(), path + ", machine '" + d.name + "': " + e.message());
    }
  }
  return out;
}

Transducer load_function(const std::string& path) {
  std::vector<Transducer> all = load_side(path, true);
  if (all.size() != 1)
    throw Error(Errc::InvalidInput,
                path + ": the function file must contain exactly one machine");
  return std::move(all.front());
}

Outcome from_distance(const DistanceResult& r, Metric metric,
                      const Alphabet& sigma, const std::string& label) {
  Outcome o;
  o.metric = metric_name(metric);
  o.reason = reason_name(r.reason);
  if (!r.detail.empty()) o.witnesses["detail"] = r.detail;
  if (r.witness_word)
    o.witnesses["word"] = format_input_word(sigma, *r.witness_word);
  if (r.finite()) {
    o.result = "finite";
    o.value = *r.value;
    o.plain = label + " (" + *o.metric + ") = " + std::to_string(*r.value);
  } else {
    o.result = "infinite";
    o.exit_code = 10;
    o.plain = label + " (" + *o.metric + ") = infinity [" + *o.reason;
    if (!r.detail.empty()) o.plain += ": " + r.detail;
    o.plain += "]";
  }
  return o;
}

Outcome from_trend(const TrendReport& rep, Metric metric,
                   const Alphabet& sigma) {
  Outcome o;
  o.metric = metric_name(metric);
  o.reason = "trend";
  o.witnesses["per_length"] = rep.per_length;
  o.witnesses["growing"] = rep.growing;
  if (rep.mismatch_witness)
    o.witnesses["mismatch_word"] =
        format_input_word(sigma, *rep.mismatch_witness);
  std::string lens;
  for (long long v : rep.per_length) lens += " " + std::to_string(v);
  if (rep.infinite_verdict()) {
    o.result = "infinite";
    o.exit_code = 10;
    o.plain = "trend (" + *o.metric + "): infinite" +
              (rep.domain_mismatch ? " [domain mismatch]" : " [growing]") +
              "; per length:" + lens;
  } else {
    o.result = "finite";
    o.value = rep.plateau_value;
    o.plain = "trend (" + *o.metric + "): sup = " +
              std::to_string(rep.plateau_value) + "; per length:" + lens;
  }
  return o;
}

void emit(const Outcome& o, bool json_out) {
  if (json_out) {
    json j;
    j["result"] = o.result;
    j["value"] = o.value ? json(*o.value) : json(nullptr);
    j["metric"] = o.metric ? json(*o.metric) : json(nullptr);
    j["reason"] = o.reason ? json(*o.reason) : json(nullptr);
    j["witnesses"] = o.witnesses;
    for (auto& [k, v] : o.extra.items()) j[k] = v;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << o.plain << "\n";
  }
}

struct Common {
  bool json_out = true;
  std::string metric_name = "lev";

  Metric metric() const { return metric_from_name(metric_name); }
};

void add_common(CLI::App* sub, Common& c, bool with_metric = true) {
  sub->add_flag("--json,!--no-json", c.json_out,
                "emit one JSON object (default) or a plain line");
  if (with_metric)
    sub->add_option("--metric", c.metric_name, "edit metric")
        ->check(CLI::IsMember({"lev", "lcs", "dl"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edit distances between finite-valued word transducers"};
  app.require_subcommand(1);

  int exit_code = 0;
  auto finish = [&](const Outcome& o, bool json_out) {
    emit(o, json_out);
    exit_code = o.exit_code;
  };

  // distance: Hausdorff edit distance between two unions.
  {
    auto* sub = app.add_subcommand(
        "distance", "distance between two finite-valued unions");
    auto c = std::make_shared<Common>();
    auto left = std::make_shared<std::string>();
    auto right = std::make_shared<std::string>();
    auto parallel = std::make_shared<int>(1);
    sub->add_option("--left", *left, "fst file with the left components")
        ->required();
    sub->add_option("--right", *right, "fst file with the right components")
        ->required();
    sub->add_option("--parallel", *parallel, "worker threads")
        ->check(CLI::PositiveNumber);
    add_common(sub, *c);
    sub->callback([=, &finish] {
      std::vector<Transducer> t = load_side(*left, false);
      std::vector<Transducer> s = load_side(*right, false);
      DistanceResult r = finite_valued_distance(t, s, c->metric(), *parallel);
      finish(from_distance(r, c->metric(), t.front().input_alphabet,
                           "distance"),
             c->json_out);
    });
  }

  // reldist: directed distance from a sequential function to a union.
  {
    auto* sub = app.add_subcommand(
        "reldist", "relative distance of a sequential function to a union");
    auto c = std::make_shared<Common>();
    auto fn = std::make_shared<std::string>();
    auto rel = std::make_shared<std::string>();
    sub->add_option("--fn", *fn, "fst file with one sequential machine")
        ->required();
    sub->add_option("--rel", *rel, "fst file with sequential components")
        ->required();
    add_common(sub, *c);
    sub->callback([=, &finish] {
      Transducer f = load_function(*fn);
      std::vector<Transducer> comps = load_side(*rel, true);
      DistanceResult r = relative_distance(f, comps, c->metric());
      finish(from_distance(r, c->metric(), f.input_alphabet,
                           "relative distance"),
             c->json_out);
    });
  }

  // check-finite: is the relative distance finite at all?
  {
    auto* sub = app.add_subcommand(
        "check-finite", "finiteness of the relative distance");
    auto c = std::make_shared<Common>();
    auto fn = std::make_shared<std::string>();
    auto rel = std::make_shared<std::string>();
    sub->add_option("--fn", *fn, "fst file with one sequential machine")
        ->required();
    sub->add_option("--rel", *rel, "fst file with sequential components")
        ->required();
    add_common(sub, *c, false);
    sub->callback([=, &finish] {
      Transducer f = load_function(*fn);
      std::vector<Transducer> comps = load_side(*rel, true);
      FinitenessReport rep = finite_relative(f, comps);
      bool ok = rep.domain_ok && rep.finite;

      Outcome o;
      o.result = ok ? "true" : "false";
      o.exit_code = ok ? 0 : 10;
      o.reason = rep.domain_ok ? (rep.finite ? "conjugate-paths"
                                             : "non-conjugate-path")
                               : "domain-mismatch";
      if (rep.domain_witness)
        o.witnesses["domain_word"] =
            format_input_word(f.input_alphabet, *rep.domain_witness);
      json classes = json::array();
      for (const ClassReport& cr : rep.classes) {
        json paths = json::array();
        for (const PathReport& pr : cr.paths)
          paths.push_back({{"sccs", pr.sccs},
                           {"witness_tape", pr.witness_tape
                                                ? json(*pr.witness_tape)
                                                : json(nullptr)}});
        classes.push_back(
            {{"members", cr.members}, {"ok", cr.ok}, {"paths", paths}});
      }
      o.witnesses["classes"] = classes;
      o.plain = std::string("finite: ") + (ok ? "yes" : "no") + " [" +
                *o.reason + "]";
      finish(o, c->json_out);
    });
  }

  // check-k: is the relative distance at most k?
  {
    auto* sub = app.add_subcommand(
        "check-k", "whether the relative distance is at most k");
    auto c = std::make_shared<Common>();
    auto fn = std::make_shared<std::string>();
    auto rel = std::make_shared<std::string>();
    auto k = std::make_shared<long long>(0);
    sub->add_option("--fn", *fn, "fst file with one sequential machine")
        ->required();
    sub->add_option("--rel", *rel, "fst file with sequential components")
        ->required();
    sub->add_option("--k", *k, "edit budget")->required();
    add_common(sub, *c);
    sub->callback([=, &finish] {
      Transducer f = load_function(*fn);
      std::vector<Transducer> comps = load_side(*rel, true);
      ClassProduct gp = global_product(f, comps);
      bool ok = k_bounded(gp.machine, valid_tapes_of(gp), *k, c->metric());

      Outcome o;
      o.metric = metric_name(c->metric());
      o.result = ok ? "true" : "false";
      o.value = *k;
      o.exit_code = ok ? 0 : 10;
      o.plain = "k = " + std::to_string(*k) + " (" + *o.metric +
                "): " + (ok ? "bounded" : "not bounded");
      finish(o, c->json_out);
    });
  }

  // conj: word conjugacy with witnesses.
  {
    auto* sub =
        app.add_subcommand("conj", "conjugacy of two words, with witnesses");
    auto c = std::make_shared<Common>();
    auto u = std::make_shared<std::string>();
    auto v = std::make_shared<std::string>();
    auto max_len = std::make_shared<long long>(-1);
    sub->add_option("u", *u, "left word")->required();
    sub->add_option("v", *v, "right word")->required();
    sub->add_option("--max-len", *max_len,
                    "longest witness to list (default |u|+|v|)");
    add_common(sub, *c, false);
    sub->callback([=, &finish] {
      bool yes = conjugate(*u, *v);
      std::size_t limit = *max_len < 0 ? u->size() + v->size()
                                       : static_cast<std::size_t>(*max_len);
      std::set<std::string> zs = conjugacy_witnesses(*u, *v, limit);

      Outcome o;
      o.result = yes ? "true" : "false";
      o.exit_code = yes ? 0 : 10;
      o.extra["conjugate"] = yes;
      o.witnesses["z"] = zs;
      o.plain = std::string("conjugate: ") + (yes ? "yes" : "no");
      if (yes) {
        o.plain += "; z:";
        for (const std::string& z : zs) o.plain += " \"" + z + "\"";
      }
      finish(o, c->json_out);
    });
  }

  // oracle-distance / oracle-reldist: brute-force trend up to a length.
  {
    auto* sub = app.add_subcommand(
        "oracle-distance", "brute-force distance trend between two unions");
    auto c = std::make_shared<Common>();
    auto left = std::make_shared<std::string>();
    auto right = std::make_shared<std::string>();
    auto max_len = std::make_shared<int>(10);
    sub->add_option("--left", *left, "fst file with the left components")
        ->required();
    sub->add_option("--right", *right, "fst file with the right components")
        ->required();
    sub->add_option("--max-len", *max_len, "longest input enumerated")
        ->check(CLI::NonNegativeNumber);
    add_common(sub, *c);
    sub->callback([=, &finish] {
      std::vector<Transducer> t = load_side(*left, false);
      std::vector<Transducer> s = load_side(*right, false);
      TrendReport rep = oracle_distance(t, s, *max_len, c->metric());
      finish(from_trend(rep, c->metric(), t.front().input_alphabet),
             c->json_out);
    });
  }
  {
    auto* sub = app.add_subcommand(
        "oracle-reldist", "brute-force relative distance trend");
    auto c = std::make_shared<Common>();
    auto fn = std::make_shared<std::string>();
    auto rel = std::make_shared<std::string>();
    auto max_len = std::make_shared<int>(10);
    sub->add_option("--fn", *fn, "fst file with one sequential machine")
        ->required();
    sub->add_option("--rel", *rel, "fst file with sequential components")
        ->required();
    sub->add_option("--max-len", *max_len, "longest input enumerated")
        ->check(CLI::NonNegativeNumber);
    add_common(sub, *c);
    sub->callback([=, &finish] {
      Transducer f = load_function(*fn);
      std::vector<Transducer> comps = load_side(*rel, true);
      TrendReport rep = oracle_relative(f, comps, *max_len, c->metric());
      finish(from_trend(rep, c->metric(), f.input_alphabet), c->json_out);
    });
  }

  // inspect: flags and canonical listing of every machine in a file.
  {
    auto* sub = app.add_subcommand("inspect", "machine summary for a file");
    auto c = std::make_shared<Common>();
    auto path = std::make_shared<std::string>();
    sub->add_option("file", *path, "fst file")->required();
    add_common(sub, *c, false);
    sub->callback([=, &finish] {
      FstDocument doc = load_document(*path);
      Outcome o;
      o.result = "ok";
      json machines = json::array();
      for (const MachineDesc& d : doc.machines) {
        Transducer m;
        try {
          m = build_machine(d, false);
        } catch (const Error& e) {
          throw Error(e.code(), *path + ", machine '" + d.name +
                                    "': " + e.message());
        }
        SccDecomposition dec = scc_condense(m);
        json jm;
        jm["name"] = d.name;
        jm["states"] = m.num_states;
        jm["arrows"] = m.transitions.size();
        jm["sequential"] = m.sequential;
        jm["complete"] = m.complete;
        jm["trim"] = m.trim;
        jm["unambiguous"] = unambiguous(m);
        jm["sccs"] = dec.comp_count;
        json sizes = json::array();
        for (const auto& mem : dec.members) sizes.push_back(mem.size());
        jm["scc_sizes"] = sizes;
        jm["domain_empty"] = language_empty(domain_nfa(m));
        machines.push_back(jm);
        o.plain += d.name + ": " + std::to_string(m.num_states) +
                   " states, " + std::to_string(m.transitions.size()) +
                   " arrows, sccs " + std::to_string(dec.comp_count);
        if (m.sequential) o.plain += ", sequential";
        if (m.complete) o.plain += ", complete";
        if (m.trim) o.plain += ", trim";
        o.plain += "\n";
      }
      if (!o.plain.empty()) o.plain.pop_back();
      o.witnesses["machines"] = machines;
      finish(o, c->json_out);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "tdist: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tdist: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
