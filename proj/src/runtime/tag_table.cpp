#include "edt/runtime/tag_table.hpp"

#include <string>

namespace edt::runtime {

namespace {

std::string describe(TagTable::Key key) {
	return "tag (" + std::to_string(key >> 32) + ", " + std::to_string(key & 0xffffffffu) + ")";
}

} // namespace

void TagTable::count_match(Entry& e) {
	++e.matches;
	if(m_meter && e.matches == e.expected) m_meter->gc_lag.add(1);
}

bool TagTable::get(Key key, TaskId waiter) {
	Shard& s = shard(key);
	std::lock_guard lock(s.mu);
	if(m_mode == Mode::OneUse) {
		const auto it = s.one_use.find(key);
		if(it == s.one_use.end()) {
			s.one_use.emplace(key, waiter);
			if(m_meter) {
				m_meter->create_objects();
				m_meter->inflight_deps.add(1);
			}
			return false;
		}
		if(it->second != put_marker) throw ProtocolError("second get on one-use " + describe(key));
		s.one_use.erase(it);
		if(m_meter) {
			m_meter->destroy_objects();
			m_meter->inflight_deps.sub(1);
		}
		return true;
	}
	Entry& e = s.persistent[key];
	if(e.put) {
		count_match(e);
		return true;
	}
	e.waiters.push_back(waiter);
	if(m_meter) {
		m_meter->create_objects();
		m_meter->inflight_deps.add(1);
	}
	return false;
}

std::optional<TaskId> TagTable::put_once(Key key) {
	if(m_mode != Mode::OneUse) throw ProtocolError("put_once on a persistent tag table");
	Shard& s = shard(key);
	std::lock_guard lock(s.mu);
	const auto it = s.one_use.find(key);
	if(it == s.one_use.end()) {
		s.one_use.emplace(key, put_marker);
		if(m_meter) {
			m_meter->create_objects();
			m_meter->inflight_deps.add(1);
		}
		return std::nullopt;
	}
	if(it->second == put_marker) throw ProtocolError("double put on one-use " + describe(key));
	const TaskId waiter = it->second;
	s.one_use.erase(it);
	if(m_meter) {
		m_meter->destroy_objects();
		m_meter->inflight_deps.sub(1);
	}
	return waiter;
}

std::vector<TaskId> TagTable::put(Key key, std::uint32_t expected_gets) {
	if(m_mode != Mode::Persistent) throw ProtocolError("put on a one-use tag table needs put_once");
	Shard& s = shard(key);
	std::lock_guard lock(s.mu);
	Entry& e = s.persistent[key];
	if(e.put) throw ProtocolError("double put on tag " + std::to_string(key));
	e.put = true;
	e.expected = expected_gets;
	std::vector<TaskId> released = std::move(e.waiters);
	e.waiters = {};
	if(m_meter) {
		m_meter->create_objects();
		if(!released.empty()) {
			m_meter->destroy_objects(static_cast<std::int64_t>(released.size()));
			m_meter->inflight_deps.sub(static_cast<std::int64_t>(released.size()));
		}
		if(expected_gets == 0) m_meter->gc_lag.add(1);
	}
	for(std::size_t i = 0; i < released.size(); ++i) count_match(e);
	return released;
}

void TagTable::dispose_all() {
	for(auto& s : m_shards) {
		std::lock_guard lock(s.mu);
		std::int64_t tags = 0, useless = 0, waiting = 0;
		for(const auto& [key, e] : s.persistent) {
			if(e.put) {
				++tags;
				useless += e.matches >= e.expected;
			}
			waiting += static_cast<std::int64_t>(e.waiters.size());
		}
		s.persistent.clear();
		if(m_meter) {
			m_meter->destroy_objects(tags + waiting);
			m_meter->gc_lag.sub(useless);
			m_meter->inflight_deps.sub(waiting);
		}
	}
}

std::size_t TagTable::entries() const {
	std::size_t total = 0;
	for(const auto& s : m_shards) {
		std::lock_guard lock(s.mu);
		total += s.one_use.size() + s.persistent.size();
	}
	return total;
}

} // namespace edt::runtime
