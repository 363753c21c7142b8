#pragma once

#include <atomic>
#include <cstdint>

namespace edt::metrics {

/// Per-run results for the five overhead classes, plus object bookkeeping.
struct OverheadCounters {
	/// Master operations completed before workers were released.
	std::uint64_t sequential_startup_ops = 0;
	std::uint64_t peak_live_sync_objects = 0;
	/// Tasks created (by the master or a predecessor) and not yet finished.
	std::uint64_t peak_inflight_tasks = 0;
	/// Unresolved dependence units held by live sync objects.
	std::uint64_t peak_inflight_deps = 0;
	/// Objects no longer useful but not yet destroyed.
	std::uint64_t gc_lag_peak = 0;

	std::uint64_t objects_created = 0;
	std::uint64_t objects_destroyed = 0;
	std::uint64_t live_objects_at_end = 0;

	friend bool operator==(const OverheadCounters&, const OverheadCounters&) = default;
};

/// A level with a high-water mark. Every update goes through one fetch_add,
/// so the sequence of values is linearizable and the recorded peak is the
/// exact maximum of that sequence.
class Gauge {
  public:
	void add(std::int64_t delta) {
		const std::int64_t now = m_value.fetch_add(delta, std::memory_order_relaxed) + delta;
		if(delta <= 0) return;
		std::int64_t peak = m_peak.load(std::memory_order_relaxed);
		while(now > peak && !m_peak.compare_exchange_weak(peak, now, std::memory_order_relaxed)) {
		}
	}
	void sub(std::int64_t delta) { add(-delta); }

	std::int64_t value() const { return m_value.load(std::memory_order_relaxed); }
	std::int64_t peak() const { return m_peak.load(std::memory_order_relaxed); }

  private:
	std::atomic<std::int64_t> m_value{0};
	std::atomic<std::int64_t> m_peak{0};
};

/// Live meters shared by every lane of a run.
class OverheadMeter {
  public:
	Gauge objects;
	Gauge inflight_tasks;
	Gauge inflight_deps;
	Gauge gc_lag;
	std::atomic<std::uint64_t> startup_ops{0};

	void create_objects(std::int64_t count = 1) {
		m_created.fetch_add(static_cast<std::uint64_t>(count), std::memory_order_relaxed);
		objects.add(count);
	}
	void destroy_objects(std::int64_t count = 1) {
		m_destroyed.fetch_add(static_cast<std::uint64_t>(count), std::memory_order_relaxed);
		objects.sub(count);
	}

	OverheadCounters snapshot() const {
		OverheadCounters c;
		c.sequential_startup_ops = startup_ops.load(std::memory_order_relaxed);
		c.peak_live_sync_objects = clamp(objects.peak());
		c.peak_inflight_tasks = clamp(inflight_tasks.peak());
		c.peak_inflight_deps = clamp(inflight_deps.peak());
		c.gc_lag_peak = clamp(gc_lag.peak());
		c.objects_created = m_created.load(std::memory_order_relaxed);
		c.objects_destroyed = m_destroyed.load(std::memory_order_relaxed);
		c.live_objects_at_end = clamp(objects.value());
		return c;
	}

  private:
	static std::uint64_t clamp(std::int64_t v) { return v < 0 ? 0 : static_cast<std::uint64_t>(v); }

	std::atomic<std::uint64_t> m_created{0};
	std::atomic<std::uint64_t> m_destroyed{0};
};

} // namespace edt::metrics
