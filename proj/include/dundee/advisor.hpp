#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dundee/advance.hpp"
#include "dundee/greedy.hpp"

namespace dundee {

/// Engines shared by every session; their memo tables accept concurrent
/// inserts.
struct Engines {
  GreedyEngine greedy;
  AdvanceEngine advance;
};

enum class AdvisorMode { adaptive, advance };
enum class SessionStatus { in_play, won, lost };

std::string to_string(AdvisorMode mode);
std::string to_string(SessionStatus status);

/// What a new session is built from. Labels keep the caller's value names;
/// `bids` (advance mode only) is a per-label bid vector, computed as an
/// optimal bid when absent.
struct SessionConfig {
  std::vector<std::string> labels;
  Counts counts;
  int rounds = 0;
  AdvisorMode mode = AdvisorMode::adaptive;
  std::optional<BidVector> bids;

  /// Parses the POST /sessions body. Throws NotationError/DomainError.
  static SessionConfig from_json(const nlohmann::json& body);
  nlohmann::json to_json() const;
};

/// "A,2,...,10,J,Q,K".
std::vector<std::string> standard_labels();
/// "v1", "v2", ...
std::vector<std::string> numbered_labels(std::size_t n);

struct DrawRecord {
  std::string bid;
  std::string drawn;
  bool survived = true;
};

struct Advice {
  AdvisorMode mode = AdvisorMode::adaptive;
  int rounds_left = 0;
  /// Adaptive: g_{m'}(s') for greedy play from here. Advance: the chance
  /// the remaining committed bids survive the remaining deck.
  ExactProb win_probability;
  /// Labels whose bid-now value is maximal.
  std::vector<std::string> optimal;
  /// Labels with the fewest remaining cards.
  std::vector<std::string> greedy;
  /// Adaptive: each label's value of bidding it now, then playing greedily.
  std::vector<std::pair<std::string, ExactProb>> what_if;
  bool decided = false;
  std::vector<std::string> warnings;
  /// Advance mode.
  std::optional<std::string> next_bid;
  BidVector remaining_bids;

  nlohmann::json to_json(const std::vector<std::string>& labels) const;
};

/// A live game with labels preserved. A session is a pure function of its
/// configuration and draw history.
class AdvisorSession {
 public:
  static AdvisorSession create(std::string id, SessionConfig config, Engines& engines);

  /// Rebuilds a session by replaying draws on a fresh one.
  static AdvisorSession replay(std::string id, SessionConfig config,
                               const std::vector<DrawRecord>& history, Engines& engines);

  const std::string& id() const { return id_; }
  const SessionConfig& config() const { return config_; }
  const Counts& remaining() const { return remaining_; }
  int rounds_left() const { return rounds_left_; }
  SessionStatus status() const { return status_; }
  const std::vector<DrawRecord>& history() const { return history_; }
  std::uint64_t version() const { return version_; }
  const BidVector& bids_left() const { return bids_left_; }

  /// Throws ConflictError once the game is over.
  const Advice& advice() const;

  /// Records one physical round. Throws DomainError for unknown labels, an
  /// exhausted drawn label, or (advance mode) a bid outside the commitment;
  /// ConflictError when the game is already over.
  void apply_draw(const std::string& bid, const std::string& drawn, Engines& engines);

  nlohmann::json to_json() const;

 private:
  std::size_t label_index(const std::string& label) const;
  void refresh_advice(Engines& engines);

  std::string id_;
  SessionConfig config_;
  Counts remaining_;
  int rounds_left_ = 0;
  SessionStatus status_ = SessionStatus::in_play;
  std::vector<DrawRecord> history_;
  std::uint64_t version_ = 0;
  BidVector bids_left_;
  std::vector<BidVector> optimal_bids_;  // advance mode, per label
  std::optional<ExactProb> optimal_value_;
  std::optional<Advice> advice_;
};

/// In-memory session table keyed by random 128-bit tokens. Mutations of one
/// session are serialized; different sessions proceed independently. With
/// a snapshot path, every change rewrites the file and the constructor
/// reloads it by replaying each session's history.
class SessionStore {
 public:
  explicit SessionStore(Engines& engines,
                        std::optional<std::filesystem::path> snapshot = std::nullopt);

  nlohmann::json create(SessionConfig config);
  nlohmann::json get(const std::string& id) const;
  nlohmann::json advice(const std::string& id) const;
  /// `expected_version`, when given, must match the session's version.
  nlohmann::json draw(const std::string& id, const std::string& bid, const std::string& drawn,
                      std::optional<std::uint64_t> expected_version);
  void remove(const std::string& id);
  std::size_t size() const;

 private:
  struct Entry {
    mutable std::mutex mu;
    AdvisorSession session;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;
  void save_snapshot() const;
  void load_snapshot();

  Engines& engines_;
  std::optional<std::filesystem::path> snapshot_;
  mutable std::mutex mu_;
  mutable std::mutex snapshot_mu_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
};

std::string new_session_token();

}  // namespace dundee
