#pragma once

// Internal to the runtime library: the lane/queue machinery shared by the
// strategies.

#include "edt/runtime/runtime.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <random>

namespace edt::runtime::detail {

using Clock = std::chrono::steady_clock;

struct DepSlot {
	DepSlot(std::int64_t count, Payload p) : counter(count), payload(p) {}
	std::atomic<std::int64_t> counter;
	Payload payload;
};

class ReadyQueue {
  public:
	void push(TaskId t) {
		{
			std::lock_guard lock(m_mu);
			m_items.push_back(t);
		}
		m_cv.notify_one();
	}

	std::optional<TaskId> try_pop() {
		std::lock_guard lock(m_mu);
		if(m_items.empty()) return std::nullopt;
		const TaskId t = m_items.front();
		m_items.pop_front();
		return t;
	}

	/// Blocks until a task is available or `stop()` holds. `running` is
	/// bumped before the lock is released, so a task is never seen as neither
	/// queued nor running.
	template <class Stop>
	std::optional<TaskId> pop(Stop stop, std::atomic<int>& running) {
		std::unique_lock lock(m_mu);
		m_cv.wait(lock, [&] { return !m_items.empty() || stop(); });
		if(m_items.empty()) return std::nullopt;
		const TaskId t = m_items.front();
		m_items.pop_front();
		running.fetch_add(1);
		return t;
	}

	void wake_all() {
		std::lock_guard lock(m_mu);
		m_cv.notify_all();
	}

	bool empty() const {
		std::lock_guard lock(m_mu);
		return m_items.empty();
	}

  private:
	mutable std::mutex m_mu;
	std::condition_variable m_cv;
	std::deque<TaskId> m_items;
};

class Engine;

struct Lane {
	Lane(Engine& e, std::uint32_t lane_id, std::uint64_t seed);

	void record(EventKind kind, TaskId task, std::uint32_t aux = 0);
	/// Makes `t` runnable.
	void fire(TaskId t);
	/// With jitter enabled, sometimes gives up the CPU to widen race windows.
	void maybe_yield();

	Engine& engine;
	std::uint32_t id;
	std::vector<Event> events;
	std::mt19937_64 rng;
};

class Strategy {
  public:
	explicit Strategy(Engine& e);
	virtual ~Strategy() = default;

	/// True if the whole master phase must finish before workers start.
	virtual bool sequential_master() const { return false; }
	/// Performs one unit of master work; returns false once none is left.
	virtual bool master_step(Lane& lane) = 0;
	virtual void on_start(Lane&, TaskId) {}
	virtual void on_complete(Lane& lane, TaskId t) = 0;
	virtual void on_finish() {}

  protected:
	Engine& m_engine;
	const graph::TaskGraph& m_graph;
	metrics::OverheadMeter& m_meter;
};

std::unique_ptr<Strategy> make_strategy(SyncModel model, Engine& engine);

class Engine {
  public:
	Engine(const graph::TaskGraph& g, SyncModel model, const RunOptions& options);

	ExecutionReport run();

	const graph::TaskGraph& graph() const { return m_graph; }
	const RunOptions& options() const { return m_options; }
	metrics::OverheadMeter& meter() { return m_meter; }
	ReadyQueue& queue() { return m_queue; }

	std::uint32_t count(TaskId t) const { return m_options.f_count ? m_options.f_count(t) : m_graph.pred_count(t); }
	Payload pack(TaskId t) const { return {t, m_graph.work_units(t)}; }

	std::uint64_t next_seq() { return m_seq.fetch_add(1, std::memory_order_relaxed); }
	std::int64_t now_ns() const { return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - m_start).count(); }

  private:
	void execute(Lane& lane, TaskId t);
	void run_cooperative(Lane& master, Lane& worker, bool master_done);
	void run_threaded(std::vector<std::unique_ptr<Lane>>& lanes, bool master_done);
	void fail(std::exception_ptr e);
	void wake_supervisor();
	std::vector<TaskId> unfinished() const;

	const graph::TaskGraph& m_graph;
	SyncModel m_model;
	RunOptions m_options;
	metrics::OverheadMeter m_meter;
	ReadyQueue m_queue;
	std::unique_ptr<Strategy> m_strategy;

	Clock::time_point m_start;
	std::atomic<std::uint64_t> m_seq{0};
	std::atomic<std::size_t> m_completed{0};
	std::atomic<std::uint64_t> m_progress{0};
	std::atomic<int> m_running{0};
	std::atomic<bool> m_all_done{false};
	std::atomic<bool> m_abort{false};
	std::atomic<bool> m_master_finished{false};
	std::vector<std::uint8_t> m_done;

	std::mutex m_wait_mu;
	std::condition_variable m_wait_cv;
	std::mutex m_error_mu;
	std::exception_ptr m_error;
};

} // namespace edt::runtime::detail
