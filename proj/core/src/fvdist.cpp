#include "tdist/fvdist.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <string>
#include <thread>
#include <utility>

#include "tdist/error.hpp"
#include "tdist/nfa.hpp"

namespace tdist {
namespace {

constexpr std::size_t kStateBudget = 250000;
constexpr std::size_t kArrowBudget = 2000000;

void validate_sides(const std::vector<Transducer>& t_comps,
                    const std::vector<Transducer>& s_comps) {
  if (t_comps.empty() || s_comps.empty())
    throw Error(Errc::EmptyMachine, "each side needs at least one component");
  const Alphabet& sigma = t_comps.front().input_alphabet;
  auto check_one = [&](const Transducer& m) {
    if (m.tape_count != 1)
      throw Error(Errc::ArityMismatch, "union components carry one tape");
    if (!(m.input_alphabet == sigma))
      throw Error(Errc::AlphabetMismatch,
                  "union components must share one input alphabet");
  };
  for (const Transducer& m : t_comps) check_one(m);
  for (const Transducer& m : s_comps) check_one(m);
}

// Trim, fold several initials into one, reject ambiguity, then complete.
// Every step preserves the relation.
Transducer prepare_component(const Transducer& m) {
  Transducer t = trim(m);
  if (t.initials.size() > 1) t = trim(merge_initials(t));
  if (!unambiguous(t))
    throw Error(Errc::AmbiguousComponent,
                "component admits two accepting runs on one input");
  return complete(t);
}

std::vector<StateId> image(const Transducer& m, const std::vector<StateId>& set,
                           Symbol a) {
  std::vector<StateId> out;
  for (StateId q : set)
    for (const Transition& tr : m.from(q, a)) out.push_back(tr.to);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Projection to one tape with finals cut down to the states where that
// component itself accepts.
Transducer restrict_tape(const Transducer& machine,
                         const std::vector<std::vector<bool>>& comp_final,
                         int tape) {
  Transducer p = project(machine, {tape});
  for (auto it = p.finals.begin(); it != p.finals.end();)
    it = comp_final[it->first][tape] ? std::next(it) : p.finals.erase(it);
  p.finalize();
  return trim(p);
}

}  // namespace

Transducer SyncProduct::t_component(int i) const {
  if (i < 0 || i >= t_count)
    throw Error(Errc::IndexOutOfRange, "no left component with this index");
  return restrict_tape(machine, component_final, i);
}

Transducer SyncProduct::s_component(int j) const {
  if (j < 0 || j >= s_count)
    throw Error(Errc::IndexOutOfRange, "no right component with this index");
  return restrict_tape(machine, component_final, t_count + j);
}

SyncProduct sync_product(const std::vector<Transducer>& t_comps,
                         const std::vector<Transducer>& s_comps) {
  validate_sides(t_comps, s_comps);
  const Alphabet sigma = t_comps.front().input_alphabet;
  const int t_count = static_cast<int>(t_comps.size());
  const int s_count = static_cast<int>(s_comps.size());
  const int total = t_count + s_count;

  std::vector<Transducer> comp;
  comp.reserve(total);
  for (const Transducer& m : t_comps) comp.push_back(prepare_component(m));
  for (const Transducer& m : s_comps) comp.push_back(prepare_component(m));

  Alphabet out_alpha = comp[0].output_alphabet;
  for (int c = 1; c < total; ++c) {
    const Alphabet& b = comp[c].output_alphabet;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (!out_alpha.find(b.name(static_cast<Symbol>(i))))
        out_alpha.add(b.name(static_cast<Symbol>(i)));
  }

  // Joint state: per component the state of the chosen run plus the subset
  // image of the input read so far. The chosen state always lies inside the
  // image, so component finality implies language membership.
  std::vector<std::map<std::vector<StateId>, int>> subset_id(total);
  std::vector<std::vector<std::vector<StateId>>> subset_members(total);
  auto intern_subset = [&](int c, std::vector<StateId> set) {
    auto [it, fresh] =
        subset_id[c].try_emplace(set, static_cast<int>(subset_members[c].size()));
    if (fresh) subset_members[c].push_back(std::move(set));
    return it->second;
  };

  std::map<std::vector<int>, StateId> state_id;
  std::vector<std::vector<int>> tuples;
  auto intern_state = [&](std::vector<int> key) {
    auto [it, fresh] =
        state_id.try_emplace(key, static_cast<StateId>(tuples.size()));
    if (fresh) {
      if (tuples.size() >= kStateBudget)
        throw Error(Errc::CapExceeded, "synchronous product exceeds the state budget");
      tuples.push_back(std::move(key));
    }
    return it->second;
  };

  std::vector<int> start(2 * total);
  for (int c = 0; c < total; ++c) {
    start[2 * c] = comp[c].initials.front();
    start[2 * c + 1] = intern_subset(c, {comp[c].initials.front()});
  }
  intern_state(std::move(start));

  // Annotated letter: base letter plus one chosen transition per component,
  // named by the indices into the component transition lists.
  Alphabet annotated;
  std::vector<Symbol> letter_of;
  std::map<std::pair<Symbol, std::vector<int>>, Symbol> letter_id;
  auto intern_letter = [&](Symbol base, const std::vector<int>& picks) {
    auto [it, fresh] = letter_id.try_emplace({base, picks},
                                             static_cast<Symbol>(letter_of.size()));
    if (fresh) {
      std::string name = sigma.name(base) + ":";
      for (std::size_t c = 0; c < picks.size(); ++c) {
        if (c) name += ',';
        name += std::to_string(picks[c]);
      }
      annotated.add(std::move(name));
      letter_of.push_back(base);
    }
    return it->second;
  };

  std::vector<Transition> arrows;
  std::map<StateId, OutputTuple> finals;
  std::vector<std::vector<bool>> comp_final;

  for (StateId s = 0; s < static_cast<StateId>(tuples.size()); ++s) {
    const std::vector<int> tuple = tuples[s];  // the backing vector grows

    std::vector<bool> cf(total);
    bool chosen_ok = true, left_accepts = false, right_accepts = false;
    for (int c = 0; c < total; ++c) {
      cf[c] = comp[c].is_final(tuple[2 * c]);
      bool lang = false;
      for (StateId p : subset_members[c][tuple[2 * c + 1]])
        if (comp[c].is_final(p)) {
          lang = true;
          break;
        }
      if (lang && !cf[c]) chosen_ok = false;
      if (lang) (c < t_count ? left_accepts : right_accepts) = true;
    }
    comp_final.push_back(cf);
    // Final when both sides accept the input and every accepting component
    // has its chosen run accepting, so each tape holds that component's
    // genuine value.
    if (chosen_ok && left_accepts && right_accepts) {
      OutputTuple fo(total);
      for (int c = 0; c < total; ++c)
        if (cf[c]) fo[c] = comp[c].finals.at(tuple[2 * c])[0];
      finals.emplace(s, std::move(fo));
    }

    for (Symbol a = 0; a < static_cast<Symbol>(sigma.size()); ++a) {
      std::vector<int> img(total);
      for (int c = 0; c < total; ++c)
        img[c] = intern_subset(c, image(comp[c], subset_members[c][tuple[2 * c + 1]], a));

      std::vector<std::span<const Transition>> spans(total);
      for (int c = 0; c < total; ++c) spans[c] = comp[c].from(tuple[2 * c], a);
      std::vector<int> pick(total, 0);
      while (true) {  // completion makes every span non-empty
        std::vector<int> globals(total);
        OutputTuple outs(total);
        std::vector<int> key(2 * total);
        for (int c = 0; c < total; ++c) {
          const Transition& tr = spans[c][pick[c]];
          globals[c] = static_cast<int>(&tr - comp[c].transitions.data());
          outs[c] = tr.outputs[0];
          key[2 * c] = tr.to;
          key[2 * c + 1] = img[c];
        }
        Symbol sym = intern_letter(a, globals);
        StateId target = intern_state(std::move(key));
        if (arrows.size() >= kArrowBudget)
          throw Error(Errc::CapExceeded,
                      "synchronous product exceeds the transition budget");
        arrows.push_back({s, sym, target, std::move(outs)});
        int c = total - 1;
        while (c >= 0 && pick[c] + 1 == static_cast<int>(spans[c].size())) {
          pick[c] = 0;
          --c;
        }
        if (c < 0) break;
        ++pick[c];
      }
    }
  }

  Transducer a;
  a.input_alphabet = annotated;
  a.output_alphabet = out_alpha;
  a.tape_count = total;
  a.num_states = static_cast<int>(tuples.size());
  a.initials = {0};
  a.transitions = std::move(arrows);
  a.finals = std::move(finals);
  a.finalize();

  std::vector<StateId> kept;
  SyncProduct sp;
  sp.machine = trim(a, &kept);
  sp.t_count = t_count;
  sp.s_count = s_count;
  sp.letter_of = std::move(letter_of);
  sp.base_alphabet = sigma;
  sp.component_final.reserve(kept.size());
  for (StateId q : kept) sp.component_final.push_back(comp_final[q]);
  return sp;
}

namespace {

struct SideTask {
  const Transducer* fn;
  const std::vector<Transducer>* rel;
  std::string tag;
};

std::vector<DistanceResult> run_tasks(const std::vector<SideTask>& tasks,
                                      Metric metric, int parallel) {
  std::vector<DistanceResult> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  auto run_one = [&](std::size_t i) {
    try {
      results[i] = relative_distance(*tasks[i].fn, *tasks[i].rel, metric);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  int workers = std::min<int>(parallel, static_cast<int>(tasks.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < tasks.size();
           i = next.fetch_add(1))
        run_one(i);
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 0; w + 1 < workers; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace

DistanceResult multiseq_distance(const SyncProduct& sp, Metric metric,
                                 int parallel) {
  std::vector<Transducer> left(sp.t_count), right(sp.s_count);
  for (int i = 0; i < sp.t_count; ++i) left[i] = sp.t_component(i);
  for (int j = 0; j < sp.s_count; ++j) right[j] = sp.s_component(j);

  std::vector<SideTask> tasks;
  tasks.reserve(left.size() + right.size());
  for (int i = 0; i < sp.t_count; ++i)
    tasks.push_back({&left[i], &right, "t" + std::to_string(i + 1)});
  for (int j = 0; j < sp.s_count; ++j)
    tasks.push_back({&right[j], &left, "s" + std::to_string(j + 1)});

  std::vector<DistanceResult> results = run_tasks(tasks, metric, parallel);

  auto translate = [&](DistanceResult& r) {
    if (!r.witness_word) return;
    InputWord base;
    base.reserve(r.witness_word->size());
    for (Symbol sym : *r.witness_word) base.push_back(sp.letter_of[sym]);
    r.witness_word = std::move(base);
  };

  for (std::size_t i = 0; i < tasks.size(); ++i)
    if (!results[i].finite()) {
      DistanceResult out = results[i];
      out.detail = tasks[i].tag + ": " + out.detail;
      translate(out);
      return out;
    }

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (*results[i].value > *results[best].value) best = i;
  DistanceResult out = results[best];
  out.detail = tasks[best].tag +
               (out.detail.empty() ? "" : ": " + out.detail);
  translate(out);
  return out;
}

DistanceResult finite_valued_distance(const std::vector<Transducer>& t,
                                      const std::vector<Transducer>& s,
                                      Metric metric, int parallel) {
  validate_sides(t, s);

  auto side_domain = [](const std::vector<Transducer>& side) {
    std::vector<Nfa> parts;
    parts.reserve(side.size());
    for (const Transducer& m : side) parts.push_back(domain_nfa(m));
    return union_nfa(parts);
  };
  Nfa dom_t = side_domain(t), dom_s = side_domain(s);
  std::optional<InputWord> w = inclusion_witness(dom_t, dom_s);
  std::string which = "left";
  if (!w) {
    w = inclusion_witness(dom_s, dom_t);
    which = "right";
  }
  if (w) {
    DistanceResult r = DistanceResult::infinite(
        DistanceResult::Reason::DomainMismatch,
        "the union domains differ; the " + which +
            " side accepts an input the other side rejects");
    r.witness_word = std::move(w);
    return r;
  }

  return multiseq_distance(sync_product(t, s), metric, parallel);
}

}  // namespace tdist
