#include "doomsday/objectives.hpp"

#include <algorithm>

namespace doomsday {

const char* class_name(ObjClass c) {
  switch (c) {
    case ObjClass::Safety: return "safety";
    case ObjClass::Reach: return "reachability";
    case ObjClass::Buchi: return "buchi";
    case ObjClass::CoBuchi: return "cobuchi";
    case ObjClass::Parity: return "parity";
  }
  return "?";
}

ObjClass class_from_name(const std::string& s) {
  if (s == "safety") return ObjClass::Safety;
  if (s == "reachability" || s == "reach") return ObjClass::Reach;
  if (s == "buchi") return ObjClass::Buchi;
  if (s == "cobuchi" || s == "co-buchi") return ObjClass::CoBuchi;
  if (s == "parity") return ObjClass::Parity;
  raise(Err::SyntaxError, "unknown objective class '" + s + "'");
}

void ObjectiveProfile::validate(const Arena& a) const {
  if (static_cast<int>(players.size()) != a.n_players)
    raise(Err::BadParams, "profile has " + std::to_string(players.size()) +
                              " objectives for " + std::to_string(a.n_players) +
                              " players");
  for (const auto& o : players) {
    if (o.cls != cls)
      raise(Err::MixedClasses, "all objectives must share one class");
    if (cls == ObjClass::Parity) {
      if (static_cast<int>(o.priority.size()) != a.n_states())
        raise(Err::BadParams, "priority map must be total");
      for (int p : o.priority)
        if (p < 0)
          raise(Err::BadParams, "negative priority");
    } else {
      if (o.target.size() != static_cast<size_t>(a.n_states()))
        raise(Err::BadParams, "target set sized for a different arena");
    }
  }
}

Region visit_set(const Lasso& l, int n_states) {
  Region r(n_states);
  for (int s : l.stem.states)
    r.set(s);
  for (int s : l.cycle.states)
    r.set(s);
  return r;
}

Region inf_set(const Lasso& l, int n_states) {
  Region r(n_states);
  for (int s : l.cycle.states)
    r.set(s);
  return r;
}

static int states_of(const Objective& o) {
  return o.cls == ObjClass::Parity ? static_cast<int>(o.priority.size())
                                   : static_cast<int>(o.target.size());
}

bool eval_lasso(const Lasso& l, const Objective& o) {
  int n = states_of(o);
  switch (o.cls) {
    case ObjClass::Safety:
      return visit_set(l, n).is_subset_of(o.target);
    case ObjClass::Reach:
      return visit_set(l, n).intersects(o.target);
    case ObjClass::Buchi:
      return inf_set(l, n).intersects(o.target);
    case ObjClass::CoBuchi:
      return inf_set(l, n).is_subset_of(o.target);
    case ObjClass::Parity: {
      Region inf = inf_set(l, n);
      int best = -1;
      for (auto s = inf.find_first(); s != Region::npos; s = inf.find_next(s))
        best = best < 0 ? o.priority[s] : std::min(best, o.priority[s]);
      return best >= 0 && best % 2 == 0;
    }
  }
  return false;
}

bool tail_shift_check(const Lasso& l, const Objective& o, int k) {
  if (o.cls != ObjClass::Buchi && o.cls != ObjClass::CoBuchi &&
      o.cls != ObjClass::Parity)
    raise(Err::BadShift, "shift only applies to tail classes");
  if (k < 0 || static_cast<size_t>(k) > l.stem.actions.size())
    raise(Err::BadShift, "k = " + std::to_string(k));
  Lasso shifted = l;
  shifted.stem.states.erase(shifted.stem.states.begin(),
                            shifted.stem.states.begin() + k);
  shifted.stem.actions.erase(shifted.stem.actions.begin(),
                             shifted.stem.actions.begin() + k);
  return eval_lasso(shifted, o);
}

} // namespace doomsday
