#include "dundee/advisor.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "dundee/errors.hpp"

namespace dundee {

using nlohmann::json;

std::string to_string(AdvisorMode mode) {
  return mode == AdvisorMode::adaptive ? "adaptive" : "advance";
}

std::string to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::in_play:
      return "in-play";
    case SessionStatus::won:
      return "won";
    case SessionStatus::lost:
      return "lost";
  }
  return "?";
}

std::vector<std::string> standard_labels() {
  return {"A", "2", "3", "4", "5", "6", "7", "8", "9", "10", "J", "Q", "K"};
}

std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

namespace {

Counts counts_field(const json& j, const char* name) {
  if (j.is_string()) return parse_counts(j.get<std::string>());
  if (j.is_array()) {
    Counts out;
    for (const auto& x : j) {
      if (!x.is_number_integer() || x.get<long>() < 0 || x.get<long>() > 1000000) {
        throw NotationError(std::string(name) + " entries must be non-negative integers");
      }
      out.push_back(x.get<int>());
    }
    if (out.empty()) throw NotationError(std::string(name) + " must not be empty");
    return out;
  }
  throw NotationError(std::string(name) + " must be a notation string or an integer array");
}

void validate(const SessionConfig& c) {
  if (c.counts.empty()) throw DomainError("deck must have at least one value");
  for (int x : c.counts) {
    if (x < 0) throw DomainError("deck counts must be non-negative");
  }
  if (c.labels.size() != c.counts.size()) {
    throw DomainError("need exactly one label per deck value");
  }
  std::set<std::string> seen;
  for (const auto& l : c.labels) {
    if (l.empty()) throw DomainError("labels must be non-empty");
    if (!seen.insert(l).second) throw DomainError("duplicate label '" + l + "'");
  }
  const int total = sum_of(c.counts);
  if (c.rounds < 1 || c.rounds > total) {
    throw DomainError("rounds must lie between 1 and the number of cards (" +
                      std::to_string(total) + ")");
  }
  if (c.bids) {
    if (c.mode != AdvisorMode::advance) throw DomainError("bids are only accepted in advance mode");
    if (c.bids->size() != c.counts.size()) throw DomainError("need one bid count per deck value");
    for (int b : *c.bids) {
      if (b < 0) throw DomainError("bid counts must be non-negative");
    }
    if (sum_of(*c.bids) != c.rounds) throw DomainError("bid counts must sum to the round count");
  }
}

std::vector<std::string> labels_where(const std::vector<std::string>& labels,
                                      const Counts& counts, int value) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == value) out.push_back(labels[i]);
  }
  return out;
}

json per_label(const std::vector<std::string>& labels, const Counts& xs) {
  json out = json::object();
  for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]] = xs[i];
  return out;
}

}  // namespace

SessionConfig SessionConfig::from_json(const json& body) {
  if (!body.is_object()) throw NotationError("request body must be a JSON object");
  SessionConfig c;
  if (!body.contains("deck")) throw NotationError("missing 'deck'");
  c.counts = counts_field(body.at("deck"), "deck");

  if (body.contains("labels")) {
    const auto& ls = body.at("labels");
    if (!ls.is_array()) throw NotationError("'labels' must be an array of strings");
    for (const auto& l : ls) {
      if (!l.is_string()) throw NotationError("'labels' must be an array of strings");
      c.labels.push_back(l.get<std::string>());
    }
  } else {
    const std::string naming = body.value("naming", "numbered");
    if (naming == "standard") {
      if (c.counts.size() != 13) throw DomainError("standard naming needs 13 values");
      c.labels = standard_labels();
    } else if (naming == "numbered") {
      c.labels = numbered_labels(c.counts.size());
    } else {
      throw NotationError("'naming' must be 'standard' or 'numbered'");
    }
  }

  if (body.contains("rounds")) {
    if (!body.at("rounds").is_number_integer()) throw NotationError("'rounds' must be an integer");
    c.rounds = body.at("rounds").get<int>();
  } else {
    c.rounds = sum_of(c.counts);
  }

  const std::string mode = body.value("mode", "adaptive");
  if (mode == "adaptive") {
    c.mode = AdvisorMode::adaptive;
  } else if (mode == "advance") {
    c.mode = AdvisorMode::advance;
  } else {
    throw NotationError("'mode' must be 'adaptive' or 'advance'");
  }
  if (body.contains("bids") && !body.at("bids").is_null()) c.bids = counts_field(body.at("bids"), "bids");
  validate(c);
  return c;
}

json SessionConfig::to_json() const {
  json j = {{"deck", counts}, {"labels", labels}, {"rounds", rounds}, {"mode", dundee::to_string(mode)}};
  if (bids) j["bids"] = *bids;
  return j;
}

json Advice::to_json(const std::vector<std::string>& labels) const {
  json j = {{"mode", dundee::to_string(mode)},
            {"rounds_left", rounds_left},
            {"win_probability", dundee::to_json(win_probability)},
            {"optimal", optimal},
            {"greedy", greedy},
            {"decided", decided},
            {"warnings", warnings}};
  json w = json::array();
  for (const auto& [label, p] : what_if) w.push_back({{"label", label}, {"probability", dundee::to_json(p)}});
  j["what_if"] = w;
  if (mode == AdvisorMode::advance) {
    j["next_bid"] = next_bid ? json(*next_bid) : json();
    j["remaining_bids"] = per_label(labels, remaining_bids);
  }
  return j;
}

AdvisorSession AdvisorSession::create(std::string id, SessionConfig config, Engines& engines) {
  validate(config);
  AdvisorSession s;
  s.id_ = std::move(id);
  s.config_ = std::move(config);
  s.remaining_ = s.config_.counts;
  s.rounds_left_ = s.config_.rounds;

  if (s.config_.mode == AdvisorMode::advance) {
    const auto& counts = s.config_.counts;
    const int m = s.config_.rounds;
    const std::size_t v = counts.size();
    // Canonical position k holds label order[k].
    std::vector<std::size_t> order(v);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
    const DeckComposition deck = canonicalize(counts);

    const bool three_singletons = v == 3 && deck.max() == 1 && m == 3;
    if (deck.is_regular() && v >= 3 && !three_singletons) {
      // Regular decks: the almost-regular bid is the unique optimum up to
      // relabeling, so no enumeration is needed.
      BidVector b(v, m / static_cast<int>(v));
      for (std::size_t i = 0; i < static_cast<std::size_t>(m) % v; ++i) ++b[i];
      s.optimal_bids_.push_back(b);
      s.optimal_value_ = engines.advance.win_prob(b, counts);
    } else {
      const BidSet best = engines.advance.optimal_bids(deck, m);
      for (const auto& canon : best.bids) {
        BidVector b(v, 0);
        for (std::size_t k = 0; k < v; ++k) b[order[k]] = canon[k];
        s.optimal_bids_.push_back(std::move(b));
      }
      s.optimal_value_ = best.value;
    }
    if (!s.config_.bids) {
      // Prefer the most even optimum; ties keep enumeration order.
      auto spread = [](const BidVector& b) {
        auto [lo, hi] = std::minmax_element(b.begin(), b.end());
        return *hi - *lo;
      };
      s.config_.bids = *std::min_element(
          s.optimal_bids_.begin(), s.optimal_bids_.end(),
          [&](const BidVector& a, const BidVector& b) { return spread(a) < spread(b); });
    }
    s.bids_left_ = *s.config_.bids;
  }
  s.refresh_advice(engines);
  return s;
}

AdvisorSession AdvisorSession::replay(std::string id, SessionConfig config,
                                      const std::vector<DrawRecord>& history, Engines& engines) {
  AdvisorSession s = create(std::move(id), std::move(config), engines);
  for (const auto& d : history) {
    s.apply_draw(d.bid, d.drawn, engines);
    if (s.history_.back().survived != d.survived) {
      throw DomainError("replayed history is inconsistent");
    }
  }
  return s;
}

const Advice& AdvisorSession::advice() const {
  if (!advice_) throw ConflictError("session is finished (" + dundee::to_string(status_) + ")");
  return *advice_;
}

std::size_t AdvisorSession::label_index(const std::string& label) const {
  const auto& ls = config_.labels;
  const auto it = std::find(ls.begin(), ls.end(), label);
  if (it == ls.end()) throw DomainError("unknown label '" + label + "'");
  return static_cast<std::size_t>(it - ls.begin());
}

void AdvisorSession::apply_draw(const std::string& bid, const std::string& drawn,
                                Engines& engines) {
  if (status_ != SessionStatus::in_play) {
    throw ConflictError("session is finished (" + dundee::to_string(status_) + ")");
  }
  const std::size_t b = label_index(bid);
  const std::size_t d = label_index(drawn);
  if (remaining_[d] == 0) throw DomainError("no card labeled '" + drawn + "' remains");
  if (config_.mode == AdvisorMode::advance && bids_left_[b] == 0) {
    throw DomainError("'" + bid + "' is not among the remaining committed bids");
  }

  const bool survived = b != d;
  --remaining_[d];
  --rounds_left_;
  if (config_.mode == AdvisorMode::advance) --bids_left_[b];
  history_.push_back({bid, drawn, survived});
  if (!survived) {
    status_ = SessionStatus::lost;
  } else if (rounds_left_ == 0) {
    status_ = SessionStatus::won;
  }
  ++version_;
  refresh_advice(engines);
}

void AdvisorSession::refresh_advice(Engines& engines) {
  if (status_ != SessionStatus::in_play) {
    advice_.reset();
    return;
  }
  Advice a;
  a.mode = config_.mode;
  a.rounds_left = rounds_left_;
  const auto& labels = config_.labels;
  const DeckComposition deck = canonicalize(remaining_);
  a.greedy = labels_where(labels, remaining_, deck.min());
  a.decided = is_decided(GameState(deck, rounds_left_));

  if (config_.mode == AdvisorMode::adaptive) {
    a.win_probability = engines.greedy.win_prob(deck, rounds_left_);
    const auto values = engines.greedy.bid_values(remaining_, rounds_left_);
    const ExactProb best = *std::max_element(values.begin(), values.end());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      a.what_if.emplace_back(labels[i], values[i]);
      if (values[i] == best) a.optimal.push_back(labels[i]);
    }
    if (a.win_probability == 0) a.warnings.push_back("win probability 0 under any play");
  } else {
    a.win_probability = engines.advance.win_prob(bids_left_, remaining_);
    a.remaining_bids = bids_left_;
    const auto next = std::max_element(bids_left_.begin(), bids_left_.end());
    a.next_bid = labels[static_cast<std::size_t>(next - bids_left_.begin())];
    a.optimal.push_back(*a.next_bid);
    if (a.win_probability == 0) {
      a.warnings.push_back("win probability 0 for the committed bids");
    }
  }
  advice_ = std::move(a);
}

json AdvisorSession::to_json() const {
  json history = json::array();
  for (const auto& d : history_) {
    history.push_back({{"bid", d.bid}, {"drawn", d.drawn}, {"survived", d.survived}});
  }
  json j = {{"id", id_},
            {"version", version_},
            {"mode", dundee::to_string(config_.mode)},
            {"status", dundee::to_string(status_)},
            {"labels", config_.labels},
            {"initial_counts", config_.counts},
            {"counts", remaining_},
            {"rounds", config_.rounds},
            {"rounds_left", rounds_left_},
            {"history", history}};
  if (config_.mode == AdvisorMode::advance) {
    j["committed_bids"] = *config_.bids;
    j["bids_left"] = bids_left_;
    j["optimal_bids"] = optimal_bids_;
    j["optimal_value"] = optimal_value_ ? dundee::to_json(*optimal_value_) : json();
  }
  j["advice"] = advice_ ? advice_->to_json(config_.labels) : json();
  return j;
}

std::string new_session_token() {
  static std::mutex mu;
  static std::random_device rd;
  std::lock_guard lock(mu);
  std::ostringstream out;
  out << std::hex;
  for (int i = 0; i < 4; ++i) {
    out.width(8);
    out.fill('0');
    out << static_cast<std::uint32_t>(rd());
  }
  return out.str();
}

SessionStore::SessionStore(Engines& engines, std::optional<std::filesystem::path> snapshot)
    : engines_(engines), snapshot_(std::move(snapshot)) {
  if (snapshot_ && std::filesystem::exists(*snapshot_)) load_snapshot();
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("unknown session '" + id + "'");
  return it->second;
}

json SessionStore::create(SessionConfig config) {
  auto entry = std::make_shared<Entry>();
  entry->session = AdvisorSession::create(new_session_token(), std::move(config), engines_);
  json out = entry->session.to_json();
  {
    std::lock_guard lock(mu_);
    sessions_.emplace(entry->session.id(), entry);
  }
  save_snapshot();
  return out;
}

json SessionStore::get(const std::string& id) const {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  return entry->session.to_json();
}

json SessionStore::advice(const std::string& id) const {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  json out = entry->session.advice().to_json(entry->session.config().labels);
  out["version"] = entry->session.version();
  return out;
}

json SessionStore::draw(const std::string& id, const std::string& bid, const std::string& drawn,
                        std::optional<std::uint64_t> expected_version) {
  auto entry = find(id);
  json out;
  {
    std::lock_guard lock(entry->mu);
    if (expected_version && *expected_version != entry->session.version()) {
      throw ConflictError("stale version " + std::to_string(*expected_version) +
                          "; session is at " + std::to_string(entry->session.version()));
    }
    entry->session.apply_draw(bid, drawn, engines_);
    out = entry->session.to_json();
  }
  save_snapshot();
  return out;
}

void SessionStore::remove(const std::string& id) {
  {
    std::lock_guard lock(mu_);
    if (sessions_.erase(id) == 0) throw NotFoundError("unknown session '" + id + "'");
  }
  save_snapshot();
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

void SessionStore::save_snapshot() const {
  if (!snapshot_) return;
  std::lock_guard file_lock(snapshot_mu_);
  std::vector<std::shared_ptr<Entry>> entries;
  {
    std::lock_guard lock(mu_);
    for (const auto& [id, e] : sessions_) entries.push_back(e);
  }
  json doc = json::array();
  for (const auto& e : entries) {
    std::lock_guard lock(e->mu);
    json history = json::array();
    for (const auto& d : e->session.history()) {
      history.push_back({{"bid", d.bid}, {"drawn", d.drawn}, {"survived", d.survived}});
    }
    doc.push_back({{"id", e->session.id()},
                   {"config", e->session.config().to_json()},
                   {"history", history}});
  }
  const auto tmp = std::filesystem::path(snapshot_->string() + ".tmp");
  {
    std::ofstream out(tmp);
    out << doc.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, *snapshot_);
}

void SessionStore::load_snapshot() {
  std::ifstream in(*snapshot_);
  const json doc = json::parse(in);
  for (const auto& item : doc) {
    SessionConfig config = SessionConfig::from_json(item.at("config"));
    std::vector<DrawRecord> history;
    for (const auto& d : item.at("history")) {
      history.push_back({d.at("bid").get<std::string>(), d.at("drawn").get<std::string>(),
                         d.at("survived").get<bool>()});
    }
    auto entry = std::make_shared<Entry>();
    entry->session = AdvisorSession::replay(item.at("id").get<std::string>(), std::move(config),
                                            history, engines_);
    sessions_.emplace(entry->session.id(), entry);
  }
}

}  // namespace dundee
