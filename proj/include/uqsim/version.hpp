#ifndef UQSIM_VERSION_HPP
#define UQSIM_VERSION_HPP

namespace uqsim {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
