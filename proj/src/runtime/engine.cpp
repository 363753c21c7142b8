#include "engine.hpp"

#include <algorithm>
#include <thread>

namespace edt::runtime {

std::string_view to_string(SyncModel m) {
	switch(m) {
	case SyncModel::Prescribed: return "prescribed";
	case SyncModel::Tags1: return "tags1";
	case SyncModel::Tags2: return "tags2";
	case SyncModel::Counted: return "counted";
	case SyncModel::AutodecNoSrc: return "autodec-nosrc";
	case SyncModel::AutodecWithSrc: return "autodec-src";
	}
	return "?";
}

std::optional<SyncModel> parse_sync_model(std::string_view name) {
	for(const auto m : all_models) {
		if(to_string(m) == name) return m;
	}
	return std::nullopt;
}

std::string_view to_string(EventKind k) {
	switch(k) {
	case EventKind::TaskStart: return "TaskStart";
	case EventKind::TaskEnd: return "TaskEnd";
	case EventKind::SlotInit: return "SlotInit";
	case EventKind::Decrement: return "Decrement";
	case EventKind::Put: return "Put";
	case EventKind::Get: return "Get";
	case EventKind::Preschedule: return "Preschedule";
	case EventKind::MasterOp: return "MasterOp";
	}
	return "?";
}

namespace detail {

namespace {

void spin_for(std::chrono::nanoseconds d) {
	const auto end = Clock::now() + d;
	while(Clock::now() < end) {
	}
}

} // namespace

Lane::Lane(Engine& e, std::uint32_t lane_id, std::uint64_t seed)
    : engine(e), id(lane_id), rng(seed * 0x9E3779B97F4A7C15ull + lane_id) {}

void Lane::record(EventKind kind, TaskId task, std::uint32_t aux) {
	if(!engine.options().record_events) return;
	events.push_back({engine.next_seq(), engine.now_ns(), id, kind, task, aux});
}

void Lane::fire(TaskId t) {
	engine.queue().push(t);
}

void Lane::maybe_yield() {
	if(engine.options().jitter_us > 0 && (rng() & 1)) std::this_thread::yield();
}

Strategy::Strategy(Engine& e) : m_engine(e), m_graph(e.graph()), m_meter(e.meter()) {}

Engine::Engine(const graph::TaskGraph& g, SyncModel model, const RunOptions& options)
    : m_graph(g), m_model(model), m_options(options), m_done(g.size(), 0) {
	if(m_options.workers == 0) throw std::invalid_argument("run: at least one worker is required");
}

void Engine::execute(Lane& lane, TaskId t) {
	lane.record(EventKind::TaskStart, t);
	m_strategy->on_start(lane, t);
	std::chrono::nanoseconds delay{std::chrono::microseconds(m_graph.work_units(t))};
	if(m_options.jitter_us > 0) delay += std::chrono::nanoseconds(lane.rng() % (1000ull * m_options.jitter_us + 1));
	if(delay.count() > 0) spin_for(delay);
	lane.record(EventKind::TaskEnd, t);
	m_done[t] = 1;
	m_meter.inflight_tasks.sub(1);
	lane.maybe_yield();
	m_strategy->on_complete(lane, t);
	m_running.fetch_sub(1);
	m_progress.fetch_add(1);
	if(m_completed.fetch_add(1) + 1 == m_graph.size()) {
		m_all_done.store(true);
		m_queue.wake_all();
		wake_supervisor();
	}
}

void Engine::wake_supervisor() {
	std::lock_guard lock(m_wait_mu);
	m_wait_cv.notify_all();
}

std::vector<TaskId> Engine::unfinished() const {
	std::vector<TaskId> out;
	for(TaskId t = 0; t < m_done.size(); ++t) {
		if(!m_done[t]) out.push_back(t);
	}
	return out;
}

void Engine::fail(std::exception_ptr e) {
	{
		std::lock_guard lock(m_error_mu);
		if(!m_error) m_error = e;
	}
	m_abort.store(true);
	m_queue.wake_all();
	wake_supervisor();
}

namespace {

DeadlockError deadlock(std::vector<TaskId> stuck, std::size_t n) {
	std::string msg = "deadlock: " + std::to_string(stuck.size()) + " of " + std::to_string(n) + " tasks never ran (";
	for(std::size_t i = 0; i < stuck.size() && i < 16; ++i) msg += (i ? " " : "") + std::to_string(stuck[i]);
	if(stuck.size() > 16) msg += " ...";
	msg += ")";
	return DeadlockError(msg, std::move(stuck));
}

} // namespace

void Engine::run_cooperative(Lane& master, Lane& worker, bool master_done) {
	if(!master_done) {
		while(m_strategy->master_step(master)) {
		}
	}
	while(const auto t = m_queue.try_pop()) {
		m_running.fetch_add(1);
		execute(worker, *t);
	}
	if(m_completed.load() < m_graph.size()) throw deadlock(unfinished(), m_graph.size());
}

void Engine::run_threaded(std::vector<std::unique_ptr<Lane>>& lanes, bool master_done) {
	m_master_finished.store(master_done);
	std::vector<std::thread> threads;
	if(!master_done) {
		threads.emplace_back([this, &lanes] {
			try {
				while(!m_abort.load() && m_strategy->master_step(*lanes[0])) m_progress.fetch_add(1);
			} catch(...) {
				fail(std::current_exception());
			}
			m_master_finished.store(true);
			wake_supervisor();
		});
	}
	for(std::size_t w = 1; w < lanes.size(); ++w) {
		threads.emplace_back([this, &lane = *lanes[w]] {
			try {
				while(true) {
					const auto t = m_queue.pop([this] { return m_all_done.load() || m_abort.load(); }, m_running);
					if(!t) break;
					execute(lane, *t);
				}
			} catch(...) {
				fail(std::current_exception());
			}
		});
	}

	std::uint64_t last_progress = m_progress.load();
	auto last_change = Clock::now();
	bool deadlocked = false;
	auto finished = [this] { return m_abort.load() || (m_all_done.load() && m_master_finished.load()); };
	while(!finished()) {
		{
			std::unique_lock lock(m_wait_mu);
			m_wait_cv.wait_for(lock, std::chrono::milliseconds(5), finished);
		}
		const std::uint64_t p = m_progress.load();
		if(p != last_progress) {
			last_progress = p;
			last_change = Clock::now();
			continue;
		}
		const bool idle = m_master_finished.load() && m_queue.empty() && m_running.load() == 0 && !m_all_done.load();
		if(idle && Clock::now() - last_change > m_options.deadlock_grace) {
			deadlocked = true;
			m_abort.store(true);
			m_queue.wake_all();
		}
	}
	for(auto& th : threads) th.join();
	if(m_error) std::rethrow_exception(m_error);
	if(deadlocked) throw deadlock(unfinished(), m_graph.size());
}

ExecutionReport Engine::run() {
	m_strategy = make_strategy(m_model, *this);
	std::vector<std::unique_ptr<Lane>> lanes;
	for(std::uint32_t i = 0; i <= m_options.workers; ++i) lanes.push_back(std::make_unique<Lane>(*this, i, m_options.seed));

	m_start = Clock::now();
	bool master_done = false;
	if(m_strategy->sequential_master()) {
		while(m_strategy->master_step(*lanes[0])) {
		}
		master_done = true;
	}
	if(m_graph.size() == 0) m_all_done.store(true);
	if(m_options.workers == 1) {
		run_cooperative(*lanes[0], *lanes[1], master_done);
	} else {
		run_threaded(lanes, master_done);
	}
	m_strategy->on_finish();
	const double wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - m_start).count();

	ExecutionReport report;
	report.model = m_model;
	report.n = m_graph.size();
	report.workers = m_options.workers;
	report.seed = m_options.seed;
	report.counters = m_meter.snapshot();
	report.wall_ms = wall_ms;
	report.tasks_executed = m_completed.load();
	if(m_options.record_events) {
		std::size_t total = 0;
		for(const auto& l : lanes) total += l->events.size();
		report.events.reserve(total);
		for(auto& l : lanes) {
			report.events.insert(report.events.end(), l->events.begin(), l->events.end());
			l->events = {};
		}
		std::sort(report.events.begin(), report.events.end(), [](const Event& a, const Event& b) { return a.seq < b.seq; });
	}
	return report;
}

} // namespace detail

ExecutionReport run(const graph::TaskGraph& g, SyncModel model, const RunOptions& options) {
	detail::Engine engine(g, model, options);
	return engine.run();
}

} // namespace edt::runtime
