#include "doomsday/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace doomsday {

using json = nlohmann::ordered_json;

namespace {

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    raise(Err::SyntaxError, "not valid JSON");
  return j;
}

int get_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    raise(Err::SyntaxError, std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

} // namespace

Arena parse_arena(const std::string& text) {
  json j = parse_text(text);
  Arena a;
  a.n_players = get_int(j, "n_players");
  if (!j.contains("states") || !j["states"].is_array() || j["states"].empty())
    raise(Err::SyntaxError, "missing states array");
  size_t n = j["states"].size();
  a.owner.assign(n, -1);
  a.state_names.assign(n, "");
  for (const auto& st : j["states"]) {
    int id = get_int(st, "id");
    if (id < 0 || static_cast<size_t>(id) >= n)
      raise(Err::SyntaxError, "state id " + std::to_string(id) +
                                  " outside 0.." + std::to_string(n - 1));
    if (a.owner[id] != -1)
      raise(Err::DuplicateState, "state " + std::to_string(id));
    int owner = get_int(st, "owner");
    if (owner < 1 || owner > a.n_players)
      raise(Err::BadOwner, "state " + std::to_string(id) + " owned by player " +
                               std::to_string(owner));
    a.owner[id] = owner;
    if (st.contains("name"))
      a.state_names[id] = st["name"].get<std::string>();
  }
  for (size_t s = 0; s < n; ++s)
    if (a.owner[s] == -1)
      raise(Err::SyntaxError, "state " + std::to_string(s) + " not declared");
  a.init = get_int(j, "init");
  if (a.init < 0 || static_cast<size_t>(a.init) >= n)
    raise(Err::BadInit, "init state " + std::to_string(a.init));
  if (!j.contains("actions") || !j["actions"].is_array() ||
      j["actions"].empty())
    raise(Err::SyntaxError, "missing actions array");
  for (const auto& act : j["actions"])
    a.actions.push_back(act.get<std::string>());
  size_t na = a.actions.size();
  a.delta_tab.assign(n * na, -1);
  if (!j.contains("delta") || !j["delta"].is_array())
    raise(Err::SyntaxError, "missing delta array");
  for (const auto& tr : j["delta"]) {
    if (!tr.is_array() || tr.size() != 3)
      raise(Err::SyntaxError, "delta entries are [state, action, successor]");
    int s = tr[0].get<int>(), act = tr[1].get<int>(), t = tr[2].get<int>();
    if (s < 0 || static_cast<size_t>(s) >= n || act < 0 ||
        static_cast<size_t>(act) >= na)
      raise(Err::SyntaxError, "delta entry out of range");
    if (t < 0 || static_cast<size_t>(t) >= n)
      raise(Err::MissingTransition,
            "delta(" + std::to_string(s) + ", " + a.actions[act] +
                ") points to unknown state " + std::to_string(t));
    if (a.delta_tab[s * na + act] != -1)
      raise(Err::SyntaxError, "duplicate delta entry for state " +
                                  std::to_string(s) + " action " +
                                  a.actions[act]);
    a.delta_tab[s * na + act] = t;
  }
  for (size_t s = 0; s < n; ++s)
    for (size_t act = 0; act < na; ++act)
      if (a.delta_tab[s * na + act] == -1)
        raise(Err::MissingTransition, "delta(" + std::to_string(s) + ", " +
                                          a.actions[act] + ") undefined");
  bool any_name = false;
  for (const auto& nm : a.state_names)
    any_name = any_name || !nm.empty();
  if (!any_name)
    a.state_names.clear();
  a.validate();
  return a;
}

std::string serialize_arena(const Arena& a) {
  json j;
  j["n_players"] = a.n_players;
  j["states"] = json::array();
  for (int s = 0; s < a.n_states(); ++s) {
    json st;
    st["id"] = s;
    st["owner"] = a.owner[s];
    if (!a.state_names.empty() && !a.state_names[s].empty())
      st["name"] = a.state_names[s];
    j["states"].push_back(st);
  }
  j["init"] = a.init;
  j["actions"] = a.actions;
  j["delta"] = json::array();
  for (int s = 0; s < a.n_states(); ++s)
    for (int act = 0; act < a.n_actions(); ++act)
      j["delta"].push_back({s, act, a.step(s, act)});
  return j.dump(2) + "\n";
}

ObjectiveProfile parse_objectives(const std::string& text, const Arena& a) {
  json j = parse_text(text);
  if (!j.contains("class") || !j["class"].is_string())
    raise(Err::SyntaxError, "missing objective class");
  ObjectiveProfile p;
  p.cls = class_from_name(j["class"].get<std::string>());
  if (!j.contains("players") || !j["players"].is_array())
    raise(Err::SyntaxError, "missing players array");
  for (const auto& pj : j["players"]) {
    Objective o;
    o.cls = p.cls;
    if (p.cls == ObjClass::Parity) {
      if (!pj.contains("priority") || !pj["priority"].is_object())
        raise(Err::SyntaxError, "parity objectives need a priority map");
      o.priority.assign(a.n_states(), -1);
      for (const auto& [key, val] : pj["priority"].items()) {
        int s = std::stoi(key);
        if (s < 0 || s >= a.n_states())
          raise(Err::SyntaxError, "priority for unknown state " + key);
        o.priority[s] = val.get<int>();
      }
      for (int s = 0; s < a.n_states(); ++s)
        if (o.priority[s] < 0)
          raise(Err::SyntaxError,
                "priority map misses state " + std::to_string(s));
    } else {
      if (!pj.contains("target") || !pj["target"].is_array())
        raise(Err::SyntaxError, "set objectives need a target array");
      o.target = Region(a.n_states());
      for (const auto& v : pj["target"]) {
        int s = v.get<int>();
        if (s < 0 || s >= a.n_states())
          raise(Err::SyntaxError, "target lists unknown state " +
                                      std::to_string(s));
        o.target.set(s);
      }
    }
    p.players.push_back(std::move(o));
  }
  p.validate(a);
  return p;
}

std::string serialize_objectives(const ObjectiveProfile& p, const Arena& a) {
  json j;
  j["class"] = class_name(p.cls);
  j["players"] = json::array();
  for (const auto& o : p.players) {
    json pj;
    if (p.cls == ObjClass::Parity) {
      json pr = json::object();
      for (int s = 0; s < a.n_states(); ++s)
        pr[std::to_string(s)] = o.priority[s];
      pj["priority"] = pr;
    } else {
      pj["target"] = region_ids(o.target);
    }
    j["players"].push_back(pj);
  }
  return j.dump(2) + "\n";
}

ImperfectArena parse_observations(const std::string& text, const Arena& a) {
  json j = parse_text(text);
  if (!j.contains("observations") || !j["observations"].is_array())
    raise(Err::SyntaxError, "missing observations array");
  ImperfectArena ia;
  ia.base = a;
  for (const auto& pj : j["observations"]) {
    std::vector<std::vector<int>> blocks;
    for (const auto& bj : pj) {
      std::vector<int> block;
      for (const auto& v : bj)
        block.push_back(v.get<int>());
      blocks.push_back(std::move(block));
    }
    ia.obs.push_back(std::move(blocks));
  }
  ia.validate();
  return ia;
}

std::string serialize_observations(const ImperfectArena& ia) {
  json j;
  j["observations"] = json::array();
  for (const auto& player : ia.obs)
    j["observations"].push_back(player);
  return j.dump(2) + "\n";
}

namespace {

json prefix_to_json(const PlayPrefix& p) {
  json j;
  j["states"] = p.states;
  j["actions"] = p.actions;
  return j;
}

PlayPrefix prefix_from_json(const json& j) {
  PlayPrefix p;
  if (!j.contains("states") || !j.contains("actions"))
    raise(Err::SyntaxError, "play prefix needs states and actions");
  for (const auto& v : j["states"])
    p.states.push_back(v.get<int>());
  for (const auto& v : j["actions"])
    p.actions.push_back(v.get<int>());
  return p;
}

} // namespace

DoomsdayWitness parse_witness(const std::string& text, const Arena& a) {
  json j = parse_text(text);
  DoomsdayWitness w;
  if (!j.contains("main"))
    raise(Err::SyntaxError, "witness needs a main lasso");
  w.main.stem = prefix_from_json(j["main"]["stem"]);
  w.main.cycle = prefix_from_json(j["main"]["cycle"]);
  if (!j.contains("strategies") || !j["strategies"].is_array())
    raise(Err::SyntaxError, "witness needs strategy tables");
  for (const auto& sj : j["strategies"]) {
    FiniteMemoryStrategy f;
    f.resize(get_int(sj, "memory_size"), a.n_states());
    f.init_memory = get_int(sj, "init");
    for (const auto& t : sj["act"]) {
      if (!t.is_array() || t.size() != 3)
        raise(Err::SyntaxError, "act entries are [memory, state, action]");
      f.set_act(t[0].get<int>(), t[1].get<int>(), t[2].get<int>());
    }
    for (const auto& t : sj["update"]) {
      if (!t.is_array() || t.size() != 3)
        raise(Err::SyntaxError, "update entries are [memory, state, memory']");
      f.set_update(t[0].get<int>(), t[1].get<int>(), t[2].get<int>());
    }
    w.strategies.push_back(std::move(f));
  }
  return w;
}

std::string serialize_witness(const DoomsdayWitness& w) {
  json j;
  j["main"]["stem"] = prefix_to_json(w.main.stem);
  j["main"]["cycle"] = prefix_to_json(w.main.cycle);
  j["strategies"] = json::array();
  for (const auto& f : w.strategies) {
    json sj;
    sj["memory_size"] = f.n_memory;
    sj["init"] = f.init_memory;
    sj["act"] = json::array();
    sj["update"] = json::array();
    for (int m = 0; m < f.n_memory; ++m)
      for (int s = 0; s < f.n_states; ++s) {
        if (f.act(m, s) >= 0)
          sj["act"].push_back({m, s, f.act(m, s)});
        if (f.update(m, s) >= 0)
          sj["update"].push_back({m, s, f.update(m, s)});
      }
    j["strategies"].push_back(sj);
  }
  return j.dump(2) + "\n";
}

std::string instance_digest(const Arena& a, const ObjectiveProfile& p) {
  std::string text = serialize_arena(a) + serialize_objectives(p, a);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    raise(Err::SyntaxError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    raise(Err::SyntaxError, "cannot write " + path);
  out << content;
}

} // namespace doomsday
