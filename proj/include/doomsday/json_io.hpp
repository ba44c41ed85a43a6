#pragma once

#include <string>

#include "doomsday/imperfect.hpp"
#include "doomsday/objectives.hpp"
#include "doomsday/witness.hpp"

namespace doomsday {

/// Arena document: {"n_players", "states":[{"id","owner","name"?}], "init",
/// "actions":[names], "delta":[[state,action,succ] x (|S|*|Sigma|)]}.
/// Serialization order: states by id, delta lexicographic by (state,action).
Arena parse_arena(const std::string& text);
std::string serialize_arena(const Arena& a);

/// Objectives document: {"class", "players":[{"target":[ids]} |
/// {"priority":{"id":p}}]}.
ObjectiveProfile parse_objectives(const std::string& text, const Arena& a);
std::string serialize_objectives(const ObjectiveProfile& p, const Arena& a);

/// Observation document: {"observations":[per player: [[state ids]...]]}.
ImperfectArena parse_observations(const std::string& text, const Arena& a);
std::string serialize_observations(const ImperfectArena& ia);

/// Witness document: main lasso plus per-player explicit strategy tables.
DoomsdayWitness parse_witness(const std::string& text, const Arena& a);
std::string serialize_witness(const DoomsdayWitness& w);

/// FNV-1a digest of the canonical instance serialization.
std::string instance_digest(const Arena& a, const ObjectiveProfile& p);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace doomsday
