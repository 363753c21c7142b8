#pragma once

#include "edt/graph/task_graph.hpp"
#include "edt/metrics/counters.hpp"

#include <absl/container/flat_hash_map.h>

#include <array>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace edt::runtime {

using graph::TaskId;

/// Misuse of the tag protocol, such as putting a key twice.
class ProtocolError : public std::logic_error {
  public:
	using std::logic_error::logic_error;
};

/// Concurrent associative table of tags, sharded with one mutex per shard.
///
/// OneUse: each key sees one get and one put. Whichever arrives first leaves
/// an entry; the second removes it. A repeated put is detected while the
/// first is still waiting for its get; once consumed the key is gone and a
/// late put is indistinguishable from a fresh one.
///
/// Persistent: a put leaves the tag in place until dispose_all(). Gets on a
/// put tag match at once; earlier gets wait in the entry and are released
/// by the put. A tag becomes useless once it has matched the number of gets
/// announced at its put.
///
/// Object accounting when a meter is attached: every pending registration
/// and every unmatched OneUse put is one live object and one unresolved
/// dependence; a Persistent tag is one live object from put to disposal.
class TagTable {
  public:
	enum class Mode { OneUse, Persistent };
	using Key = std::uint64_t;

	explicit TagTable(Mode mode, metrics::OverheadMeter* meter = nullptr) : m_mode(mode), m_meter(meter) {}
	TagTable(const TagTable&) = delete;
	TagTable& operator=(const TagTable&) = delete;

	static Key edge_key(TaskId src, TaskId dst) { return (static_cast<Key>(src) << 32) | dst; }

	/// Returns true if the tag was already put (matched now); otherwise
	/// `waiter` stays registered until the put.
	bool get(Key key, TaskId waiter);

	/// OneUse: records the put and returns the waiter it releases, if any.
	std::optional<TaskId> put_once(Key key);

	/// Persistent: records the put of a tag that will be read by
	/// `expected_gets` gets and returns the waiters it releases.
	std::vector<TaskId> put(Key key, std::uint32_t expected_gets);

	/// Persistent mode: destroys every remaining tag.
	void dispose_all();

	/// Entries currently held, registrations and tags alike.
	std::size_t entries() const;

  private:
	struct Entry {
		bool put = false;
		std::uint32_t matches = 0;
		std::uint32_t expected = 0;
		std::vector<TaskId> waiters;
	};
	// OneUse entries only need to know which side arrived.
	static constexpr TaskId put_marker = 0xffffffffu;

	struct Shard {
		mutable std::mutex mu;
		absl::flat_hash_map<Key, TaskId> one_use;
		absl::flat_hash_map<Key, Entry> persistent;
	};
	static constexpr std::size_t shard_count = 64;

	Shard& shard(Key key) { return m_shards[(key * 0x9E3779B97F4A7C15ull) >> 58]; }
	void count_match(Entry& e);

	Mode m_mode;
	metrics::OverheadMeter* m_meter;
	std::array<Shard, shard_count> m_shards;
};

} // namespace edt::runtime
