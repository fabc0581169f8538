#include "stripes/qk.hpp"

namespace stripes {

const char* to_string(ScoreTag tag) {
    switch (tag) {
        case ScoreTag::Exact: return "exact";
        case ScoreTag::TransformUnpooled: return "transform-unpooled";
        case ScoreTag::TransformPooled: return "transform-pooled";
        case ScoreTag::Spe: return "spe";
        case ScoreTag::LinearPath: return "linear-path";
    }
    return "?";
}

} // namespace stripes
