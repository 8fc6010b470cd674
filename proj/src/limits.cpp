#include "ncabp/limits.hpp"

namespace ncabp {

limits& budget() {
    static limits instance;
    return instance;
}

}  // namespace ncabp
