#include "vformation/errors.hpp"

namespace vform {

void rethrow_with_context(const std::exception_ptr& error, const std::string& context) {
  try {
    std::rethrow_exception(error);
  } catch (const ValidationError& e) {
    throw ValidationError(e.field(), context + ": " + e.detail());
  } catch (const ConfigError& e) {
    throw ConfigError(context + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(context + ": " + e.what());
  } catch (const NumericError& e) {
    throw NumericError(context + ": " + e.what());
  } catch (const Error& e) {
    throw Error(context + ": " + e.what());
  }
}

}  // namespace vform
