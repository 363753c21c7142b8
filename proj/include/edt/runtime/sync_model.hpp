#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace edt::runtime {

enum class SyncModel {
	Prescribed,
	Tags1,
	Tags2,
	Counted,
	AutodecNoSrc,
	AutodecWithSrc,
};

inline constexpr std::array<SyncModel, 6> all_models{
    SyncModel::Prescribed, SyncModel::Tags1, SyncModel::Tags2, SyncModel::Counted, SyncModel::AutodecNoSrc, SyncModel::AutodecWithSrc,
};

/// prescribed, tags1, tags2, counted, autodec-nosrc, autodec-src
std::string_view to_string(SyncModel m);
std::optional<SyncModel> parse_sync_model(std::string_view name);

} // namespace edt::runtime
