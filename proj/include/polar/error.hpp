#pragma once

#include <stdexcept>
#include <string>

namespace polar {

enum class errc {
	invalid_parameter,
	size_limit,
	budget_exceeded,
	io_error,
};

// Library errors carry a category so the CLI can map them to exit codes.
class error : public std::runtime_error {
public:
	error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
	errc code() const noexcept { return code_; }

private:
	errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what)
{
	if (!ok)
		fail(code, what);
}

} // namespace polar
