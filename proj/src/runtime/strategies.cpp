#include "edt/runtime/tag_table.hpp"
#include "engine.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <array>

namespace edt::runtime::detail {

namespace {

// Prescribed, method 1: the master creates every task and every input slot
// up front. A slot that has been satisfied is dead weight until its task
// starts and frees the whole group.
class Prescribed final : public Strategy {
  public:
	explicit Prescribed(Engine& e) : Strategy(e), m_remaining(m_graph.size()), m_satisfied(m_graph.edge_count()) {}

	bool sequential_master() const override { return true; }

	bool master_step(Lane& lane) override {
		if(m_next == m_graph.size()) return false;
		const TaskId t = m_next++;
		const auto preds = m_graph.predecessors(t);
		lane.record(EventKind::MasterOp, t, 0);
		for(std::size_t i = 0; i < preds.size(); ++i) lane.record(EventKind::MasterOp, t, 1);
		m_remaining[t].store(static_cast<std::uint32_t>(preds.size()), std::memory_order_relaxed);
		m_meter.startup_ops.fetch_add(1 + preds.size(), std::memory_order_relaxed);
		m_meter.inflight_tasks.add(1);
		if(!preds.empty()) {
			m_meter.create_objects(static_cast<std::int64_t>(preds.size()));
			m_meter.inflight_deps.add(static_cast<std::int64_t>(preds.size()));
		}
		if(preds.empty()) lane.fire(t);
		return true;
	}

	void on_start(Lane&, TaskId t) override {
		const auto k = static_cast<std::int64_t>(m_graph.pred_count(t));
		if(k == 0) return;
		m_meter.destroy_objects(k);
		m_meter.gc_lag.sub(k);
	}

	void on_complete(Lane& lane, TaskId p) override {
		const auto succ = m_graph.successors(p);
		if(succ.empty()) return;
		m_meter.inflight_deps.sub(static_cast<std::int64_t>(succ.size()));
		m_meter.gc_lag.add(static_cast<std::int64_t>(succ.size()));
		for(const auto s : succ) {
			const auto preds = m_graph.predecessors(s);
			const auto idx = m_graph.pred_offset(s) + static_cast<std::size_t>(std::lower_bound(preds.begin(), preds.end(), p) - preds.begin());
			m_satisfied[idx].store(1, std::memory_order_relaxed);
			const std::uint32_t left = m_remaining[s].fetch_sub(1, std::memory_order_acq_rel) - 1;
			lane.record(EventKind::Decrement, s, left);
			if(left == 0) lane.fire(s);
		}
	}

  private:
	std::vector<std::atomic<std::uint32_t>> m_remaining;
	std::vector<std::atomic<std::uint8_t>> m_satisfied;
	TaskId m_next = 0;
};

// Tags with one tag per edge, consumed by its single get.
class Tags1 final : public Strategy {
  public:
	explicit Tags1(Engine& e) : Strategy(e), m_table(TagTable::Mode::OneUse, &m_meter), m_outstanding(m_graph.size()) {
		for(TaskId t = 0; t < m_graph.size(); ++t) m_outstanding[t].store(m_graph.pred_count(t), std::memory_order_relaxed);
	}

	bool master_step(Lane& lane) override {
		if(m_next == m_graph.size()) return false;
		const TaskId t = m_next++;
		m_meter.inflight_tasks.add(1);
		const auto preds = m_graph.predecessors(t);
		if(preds.empty()) {
			lane.fire(t);
			return true;
		}
		for(const auto p : preds) {
			lane.record(EventKind::Get, t, p);
			if(m_table.get(TagTable::edge_key(p, t), t)) satisfy(lane, t);
		}
		return true;
	}

	void on_complete(Lane& lane, TaskId p) override {
		for(const auto s : m_graph.successors(p)) {
			lane.record(EventKind::Put, p, s);
			if(m_table.put_once(TagTable::edge_key(p, s))) satisfy(lane, s);
		}
	}

  private:
	void satisfy(Lane& lane, TaskId t) {
		if(m_outstanding[t].fetch_sub(1, std::memory_order_acq_rel) == 1) lane.fire(t);
	}

	TagTable m_table;
	std::vector<std::atomic<std::uint32_t>> m_outstanding;
	TaskId m_next = 0;
};

// Tags with one persistent tag per task. A task walks its predecessors'
// tags one at a time, latest predecessor first, so it holds at most one
// registration.
class Tags2 final : public Strategy {
  public:
	explicit Tags2(Engine& e) : Strategy(e), m_table(TagTable::Mode::Persistent, &m_meter), m_next_get(m_graph.size(), 0) {}

	bool master_step(Lane& lane) override {
		if(m_next == m_graph.size()) return false;
		const TaskId t = m_next++;
		m_meter.inflight_tasks.add(1);
		continue_gets(lane, t);
		return true;
	}

	void on_complete(Lane& lane, TaskId p) override {
		lane.record(EventKind::Put, p);
		for(const auto w : m_table.put(p, m_graph.out_degree(p))) continue_gets(lane, w);
	}

	void on_finish() override { m_table.dispose_all(); }

  private:
	void continue_gets(Lane& lane, TaskId t) {
		const auto preds = m_graph.predecessors(t);
		while(m_next_get[t] < preds.size()) {
			const TaskId p = preds[preds.size() - 1 - m_next_get[t]];
			++m_next_get[t];
			lane.record(EventKind::Get, t, p);
			// after a registration the put's lane owns t
			if(!m_table.get(p, t)) return;
		}
		lane.fire(t);
	}

	TagTable m_table;
	std::vector<std::uint32_t> m_next_get;
	TaskId m_next = 0;
};

void decrement(Lane& lane, metrics::OverheadMeter& meter, TaskId t, DepSlot* slot) {
	const std::int64_t left = slot->counter.fetch_sub(1, std::memory_order_acq_rel) - 1;
	if(left < 0) throw InvariantViolation("task " + std::to_string(t) + " decremented below zero; f_count undercounts its predecessors");
	lane.record(EventKind::Decrement, t, static_cast<std::uint32_t>(left));
	meter.inflight_deps.sub(1);
	if(left == 0) lane.fire(t);
}

void account_install(Lane& lane, metrics::OverheadMeter& meter, TaskId t, std::uint32_t count) {
	lane.record(EventKind::SlotInit, t, count);
	meter.create_objects();
	meter.inflight_tasks.add(1);
	if(count > 0) meter.inflight_deps.add(count);
}

std::uint32_t count_for_autodec(Engine& e, TaskId t) {
	const std::uint32_t count = e.count(t);
	if(count == 0) throw InvariantViolation("f_count is 0 for task " + std::to_string(t) + " although a predecessor completed");
	return count;
}

// Counted dependences with every count evaluated by the master.
class Counted final : public Strategy {
  public:
	explicit Counted(Engine& e) : Strategy(e), m_slots(m_graph.size()) {}

	bool sequential_master() const override { return true; }

	bool master_step(Lane& lane) override {
		if(m_next == m_graph.size()) return false;
		const TaskId t = m_next++;
		const std::uint32_t count = m_engine.count(t);
		lane.record(EventKind::MasterOp, t, 2);
		m_slots[t] = std::make_unique<DepSlot>(count, m_engine.pack(t));
		lane.record(EventKind::MasterOp, t, 3);
		m_meter.startup_ops.fetch_add(2, std::memory_order_relaxed);
		account_install(lane, m_meter, t, count);
		if(count == 0) lane.fire(t);
		return true;
	}

	void on_start(Lane&, TaskId t) override {
		m_slots[t].reset();
		m_meter.destroy_objects();
	}

	void on_complete(Lane& lane, TaskId p) override {
		for(const auto s : m_graph.successors(p)) decrement(lane, m_meter, s, m_slots[s].get());
	}

  private:
	std::vector<std::unique_ptr<DepSlot>> m_slots;
	TaskId m_next = 0;
};

// Autodec over a dense array of slot pointers. Null means not created yet;
// the tombstone marks a task that has started, so a late preschedule
// cannot recreate its slot.
class AutodecNoSrc final : public Strategy {
  public:
	explicit AutodecNoSrc(Engine& e) : Strategy(e), m_cells(std::make_unique<std::atomic<DepSlot*>[]>(m_graph.size())) {
		m_meter.create_objects(static_cast<std::int64_t>(m_graph.size()));
	}

	~AutodecNoSrc() override {
		for(TaskId t = 0; t < m_graph.size(); ++t) {
			DepSlot* s = m_cells[t].load();
			if(s != tombstone()) delete s;
		}
	}

	bool master_step(Lane& lane) override {
		if(m_next == m_graph.size()) return false;
		preschedule(lane, m_next++);
		return true;
	}

	void on_start(Lane&, TaskId t) override {
		delete m_cells[t].exchange(tombstone(), std::memory_order_acq_rel);
		m_meter.destroy_objects();
	}

	void on_complete(Lane& lane, TaskId p) override {
		for(const auto s : m_graph.successors(p)) autodec(lane, s);
	}

	void on_finish() override { m_meter.destroy_objects(static_cast<std::int64_t>(m_graph.size())); }

  private:
	static DepSlot* tombstone() {
		static DepSlot marker(0, {});
		return &marker;
	}

	void preschedule(Lane& lane, TaskId t) {
		if(m_cells[t].load(std::memory_order_acquire) != nullptr) {
			lane.record(EventKind::Preschedule, t, 0);
			return;
		}
		const std::uint32_t count = m_engine.count(t);
		auto* fresh = new DepSlot(count, m_engine.pack(t));
		DepSlot* expected = nullptr;
		if(!m_cells[t].compare_exchange_strong(expected, fresh, std::memory_order_acq_rel)) {
			delete fresh;
			lane.record(EventKind::Preschedule, t, 0);
			return;
		}
		lane.record(EventKind::Preschedule, t, 1);
		account_install(lane, m_meter, t, count);
		if(count == 0) lane.fire(t);
	}

	void autodec(Lane& lane, TaskId t) {
		DepSlot* slot = m_cells[t].load(std::memory_order_acquire);
		if(slot == nullptr) {
			const std::uint32_t count = count_for_autodec(m_engine, t);
			auto* fresh = new DepSlot(count, m_engine.pack(t));
			lane.maybe_yield();
			DepSlot* expected = nullptr;
			if(m_cells[t].compare_exchange_strong(expected, fresh, std::memory_order_acq_rel)) {
				account_install(lane, m_meter, t, count);
				slot = fresh;
			} else {
				delete fresh;
				slot = expected;
			}
		}
		if(slot == tombstone()) throw InvariantViolation("decrement of task " + std::to_string(t) + " after it started");
		decrement(lane, m_meter, t, slot);
	}

	std::unique_ptr<std::atomic<DepSlot*>[]> m_cells;
	TaskId m_next = 0;
};

// Autodec over a sharded map keyed by rank. Only slots of tasks that are
// created and not yet started are resident.
//
// The master may preschedule any superset of the sources. It visits that
// set in ascending order and publishes its position under the shard lock of
// each visited task. A task that starts before the master has visited it
// leaves a tombstone, which the master removes on its visit, so every task
// is installed exactly once.
class AutodecWithSrc final : public Strategy {
  public:
	explicit AutodecWithSrc(Engine& e) : Strategy(e) {
		if(m_engine.options().preschedule_set) {
			m_set = *m_engine.options().preschedule_set;
			std::sort(m_set.begin(), m_set.end());
			m_set.erase(std::unique(m_set.begin(), m_set.end()), m_set.end());
			if(!m_set.empty() && m_set.back() >= m_graph.size()) throw std::invalid_argument("preschedule set names a task outside the graph");
		} else {
			m_set = m_graph.sources();
		}
	}

	~AutodecWithSrc() override {
		for(auto& sh : m_shards) {
			for(auto& [t, s] : sh.slots) {
				if(s != tombstone()) delete s;
			}
		}
	}

	bool master_step(Lane& lane) override {
		if(m_next == m_set.size()) return false;
		preschedule(lane, m_next++);
		return true;
	}

	void on_start(Lane&, TaskId t) override {
		DepSlot* slot = nullptr;
		bool left_tombstone = false;
		{
			Shard& sh = shard(t);
			std::lock_guard lock(sh.mu);
			const auto it = sh.slots.find(t);
			if(it == sh.slots.end() || it->second == tombstone()) throw InvariantViolation("task " + std::to_string(t) + " started without a slot");
			slot = it->second;
			const auto pos = std::lower_bound(m_set.begin(), m_set.end(), t);
			const bool pending = pos != m_set.end() && *pos == t && m_cursor.load(std::memory_order_relaxed) <= static_cast<std::size_t>(pos - m_set.begin());
			if(pending) {
				it->second = tombstone();
				left_tombstone = true;
			} else {
				sh.slots.erase(it);
			}
		}
		delete slot;
		m_meter.destroy_objects();
		if(left_tombstone) m_meter.create_objects();
	}

	void on_complete(Lane& lane, TaskId p) override {
		for(const auto s : m_graph.successors(p)) autodec(lane, s);
	}

  private:
	struct Shard {
		std::mutex mu;
		absl::flat_hash_map<TaskId, DepSlot*> slots;
	};

	static DepSlot* tombstone() {
		static DepSlot marker(0, {});
		return &marker;
	}

	Shard& shard(TaskId t) { return m_shards[(static_cast<std::uint64_t>(t) * 0x9E3779B97F4A7C15ull) >> 58]; }

	void preschedule(Lane& lane, std::size_t index) {
		const TaskId t = m_set[index];
		const std::uint32_t count = m_engine.count(t);
		bool installed = false, erased_tombstone = false;
		{
			Shard& sh = shard(t);
			std::lock_guard lock(sh.mu);
			m_cursor.store(index + 1, std::memory_order_relaxed);
			const auto it = sh.slots.find(t);
			if(it == sh.slots.end()) {
				sh.slots.emplace(t, new DepSlot(count, m_engine.pack(t)));
				installed = true;
			} else if(it->second == tombstone()) {
				sh.slots.erase(it);
				erased_tombstone = true;
			}
		}
		lane.record(EventKind::Preschedule, t, installed ? 1 : 0);
		if(erased_tombstone) m_meter.destroy_objects();
		if(!installed) return;
		account_install(lane, m_meter, t, count);
		if(count == 0) lane.fire(t);
	}

	void autodec(Lane& lane, TaskId t) {
		Shard& sh = shard(t);
		DepSlot* slot = nullptr;
		{
			std::lock_guard lock(sh.mu);
			const auto it = sh.slots.find(t);
			if(it != sh.slots.end()) slot = it->second;
		}
		if(slot == nullptr) {
			const std::uint32_t count = count_for_autodec(m_engine, t);
			auto* fresh = new DepSlot(count, m_engine.pack(t));
			lane.maybe_yield();
			bool won = false;
			{
				std::lock_guard lock(sh.mu);
				const auto [it, inserted] = sh.slots.try_emplace(t, fresh);
				won = inserted;
				slot = it->second;
			}
			if(won) {
				account_install(lane, m_meter, t, count);
			} else {
				delete fresh;
			}
		}
		if(slot == tombstone()) throw InvariantViolation("decrement of task " + std::to_string(t) + " after it started");
		decrement(lane, m_meter, t, slot);
	}

	std::vector<TaskId> m_set;
	std::size_t m_next = 0;
	std::atomic<std::size_t> m_cursor{0};
	std::array<Shard, 64> m_shards;
};

} // namespace

std::unique_ptr<Strategy> make_strategy(SyncModel model, Engine& engine) {
	switch(model) {
	case SyncModel::Prescribed: return std::make_unique<Prescribed>(engine);
	case SyncModel::Tags1: return std::make_unique<Tags1>(engine);
	case SyncModel::Tags2: return std::make_unique<Tags2>(engine);
	case SyncModel::Counted: return std::make_unique<Counted>(engine);
	case SyncModel::AutodecNoSrc: return std::make_unique<AutodecNoSrc>(engine);
	case SyncModel::AutodecWithSrc: return std::make_unique<AutodecWithSrc>(engine);
	}
	throw std::invalid_argument("unknown synchronization model");
}

} // namespace edt::runtime::detail
