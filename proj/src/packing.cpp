// SPDX-License-Identifier: Apache-2.0
#include "ohsim/packing.hpp"

#include <sstream>
#include <stdexcept>

namespace ohsim::pack {

namespace {
bool is_pow2(long v) { return v > 0 && (v & (v - 1)) == 0; }

long ceil_div(long a, long b) { return (a + b - 1) / b; }
}  // namespace

TileShape TileShape::make(long t1, long t2, std::size_t slot_count) {
    if (t1 <= 0 || t2 <= 0 || static_cast<std::size_t>(t1) * static_cast<std::size_t>(t2) != slot_count)
        throw std::invalid_argument("tile shape must satisfy t1 * t2 = slot count");
    return TileShape{t1, t2};
}

TileShape TileShape::parse(const std::string& text, std::size_t slot_count) {
    // "[m/t1,n/t2]" — numerators are symbolic names, divisors are integers or "s".
    auto fail = [&] { throw std::invalid_argument("bad tile shape string: " + text); };
    std::string body = text;
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') fail();
    body = body.substr(1, body.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string::npos) fail();
    auto divisor = [&](std::string part) -> long {
        auto slash = part.find('/');
        if (slash == std::string::npos) fail();
        std::string d = part.substr(slash + 1);
        if (d == "s") return static_cast<long>(slot_count);
        return std::stol(d);
    };
    long t1 = divisor(body.substr(0, comma));
    long t2 = divisor(body.substr(comma + 1));
    return make(t1, t2, slot_count);
}

std::string TileShape::str(long m, long n) const {
    std::ostringstream os;
    os << "[" << m << "/" << t1 << "," << n << "/" << t2 << "]";
    return os.str();
}

std::vector<TileShape> TileShape::enumerate(std::size_t slot_count) {
    std::vector<TileShape> out;
    for (long t1 = 1; static_cast<std::size_t>(t1) <= slot_count; t1 *= 2)
        out.push_back(TileShape{t1, static_cast<long>(slot_count) / t1});
    return out;
}

const CipherVec& TileTensor::tile(long gr, long gc) const {
    if (gr < 0 || gr >= grid_rows_ || gc < 0 || gc >= grid_cols_)
        throw std::invalid_argument("tile index out of range");
    return tiles_[static_cast<std::size_t>(gr * grid_cols_ + gc)];
}

namespace {
std::vector<CSlot> tile_slots(const Matrix& m, long rows, long cols, const TileShape& sh,
                              long gr, long gc, std::size_t s) {
    std::vector<CSlot> slots(s);
    for (long r = 0; r < sh.t1; ++r) {
        for (long c = 0; c < sh.t2; ++c) {
            long lr = gr * sh.t1 + r;
            long lc = gc * sh.t2 + c;
            if (lr < rows && lc < cols) slots[static_cast<std::size_t>(r * sh.t2 + c)] = CSlot(m[static_cast<std::size_t>(lr)][static_cast<std::size_t>(lc)]);
        }
    }
    return slots;
}
}  // namespace

TileTensor pack(HeContext& ctx, const Matrix& m, TileShape shape) {
    if (static_cast<std::size_t>(shape.t1) * static_cast<std::size_t>(shape.t2) != ctx.slots())
        throw std::invalid_argument("pack: t1 * t2 != slot count");
    TileTensor t;
    t.rows_ = static_cast<long>(m.size());
    t.cols_ = t.rows_ ? static_cast<long>(m.front().size()) : 0;
    for (const auto& row : m)
        if (static_cast<long>(row.size()) != t.cols_) throw std::invalid_argument("pack: ragged matrix");
    t.shape_ = shape;
    t.grid_rows_ = std::max(1L, ceil_div(t.rows_, shape.t1));
    t.grid_cols_ = std::max(1L, ceil_div(t.cols_, shape.t2));
    t.tiles_.reserve(static_cast<std::size_t>(t.grid_rows_ * t.grid_cols_));
    for (long gr = 0; gr < t.grid_rows_; ++gr)
        for (long gc = 0; gc < t.grid_cols_; ++gc)
            t.tiles_.push_back(ctx.encrypt(
                ctx.encode_complex(tile_slots(m, t.rows_, t.cols_, shape, gr, gc, ctx.slots()))));
    return t;
}

Matrix unpack(HeContext& ctx, const TileTensor& t) {
    Matrix m(static_cast<std::size_t>(t.rows_), std::vector<Rat>(static_cast<std::size_t>(t.cols_), Rat(0)));
    for (long gr = 0; gr < t.grid_rows_; ++gr) {
        for (long gc = 0; gc < t.grid_cols_; ++gc) {
            auto slots = ctx.decrypt(t.tile(gr, gc));
            for (long r = 0; r < t.shape_.t1; ++r) {
                for (long c = 0; c < t.shape_.t2; ++c) {
                    long lr = gr * t.shape_.t1 + r;
                    long lc = gc * t.shape_.t2 + c;
                    if (lr < t.rows_ && lc < t.cols_)
                        m[static_cast<std::size_t>(lr)][static_cast<std::size_t>(lc)] =
                            slots[static_cast<std::size_t>(r * t.shape_.t2 + c)].re;
                }
            }
        }
    }
    return m;
}

namespace {
void require_same_layout(const TileTensor& a, const TileTensor& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.shape().t1 != b.shape().t1 ||
        a.shape().t2 != b.shape().t2)
        throw std::invalid_argument("tile tensors must share logical and tile shapes");
}

TileTensor map2(HeContext& ctx, const TileTensor& a, const TileTensor& b, bool multiply) {
    require_same_layout(a, b);
    TileTensor out = a;
    for (std::size_t i = 0; i < out.tiles().size(); ++i) {
        const CipherVec& x = a.tiles()[i];
        const CipherVec& y = b.tiles()[i];
        const_cast<std::vector<CipherVec>&>(out.tiles())[i] = multiply ? ctx.mul(x, y) : ctx.add(x, y);
    }
    return out;
}
}  // namespace

TileTensor ew_add(HeContext& ctx, const TileTensor& a, const TileTensor& b) {
    return map2(ctx, a, b, false);
}

TileTensor ew_mul(HeContext& ctx, const TileTensor& a, const TileTensor& b) {
    return map2(ctx, a, b, true);
}

TileTensor ew_pt_mul(HeContext& ctx, const Matrix& plain, const TileTensor& a) {
    if (static_cast<long>(plain.size()) != a.rows())
        throw std::invalid_argument("ew_pt_mul: shape mismatch");
    TileTensor out = a;
    for (long gr = 0; gr < a.grid_rows(); ++gr) {
        for (long gc = 0; gc < a.grid_cols(); ++gc) {
            auto slots = tile_slots(plain, a.rows(), a.cols(), a.shape(), gr, gc, ctx.slots());
            PlainVec p = ctx.encode_complex(slots);
            out.tiles_[static_cast<std::size_t>(gr * a.grid_cols() + gc)] =
                ctx.pt_mul(p, a.tile(gr, gc));
        }
    }
    return out;
}

TileTensor reduce_dim(HeContext& ctx, const TileTensor& t, int dim) {
    if (dim != 0 && dim != 1) throw std::invalid_argument("reduce_dim: dim must be 0 or 1");
    TileTensor out = t;
    long t1 = t.shape().t1, t2 = t.shape().t2;
    if (dim == 1) {
        // Sum each row's t2 contiguous slots, then fold the tile grid columns.
        if (!is_pow2(t2)) throw std::invalid_argument("reduce_dim: t2 must be a power of two");
        std::vector<CipherVec> reduced;
        reduced.reserve(static_cast<std::size_t>(t.grid_rows()));
        for (long gr = 0; gr < t.grid_rows(); ++gr) {
            CipherVec acc;
            bool first = true;
            for (long gc = 0; gc < t.grid_cols(); ++gc) {
                acc = first ? t.tile(gr, gc) : ctx.add(acc, t.tile(gr, gc));
                first = false;
            }
            reduced.push_back(t2 > 1 ? ctx.rotate_and_sum(acc, static_cast<std::size_t>(t2)) : acc);
        }
        out.tiles_ = std::move(reduced);
        out.grid_cols_ = 1;
        out.cols_ = 1;  // row sums live in each tile row's first slot
    } else {
        // Sum stride-t2 classes inside each tile (cyclically closed since
        // t1 * t2 = s, so every slot ends up holding its column sum), then
        // fold the tile grid rows.
        if (!is_pow2(t1)) throw std::invalid_argument("reduce_dim: t1 must be a power of two");
        std::vector<CipherVec> reduced;
        reduced.reserve(static_cast<std::size_t>(t.grid_cols()));
        for (long gc = 0; gc < t.grid_cols(); ++gc) {
            CipherVec acc;
            bool first = true;
            for (long gr = 0; gr < t.grid_rows(); ++gr) {
                acc = first ? t.tile(gr, gc) : ctx.add(acc, t.tile(gr, gc));
                first = false;
            }
            for (long step = 1; step < t1; step <<= 1) acc = ctx.add(acc, ctx.rotate(acc, step * t2));
            reduced.push_back(std::move(acc));
        }
        out.tiles_ = std::move(reduced);
        out.grid_rows_ = 1;
        out.rows_ = 1;
    }
    return out;
}

namespace {
/// Exact `copies`-fold replication of the first `width` units along `stride`
/// via the binary decomposition of the copy count (no overshoot, so padding
/// stays zero). The source must be zero outside its width.
CipherVec replicate_units(HeContext& ctx, const CipherVec& src, long width, long stride,
                          long copies) {
    CipherVec block = src;
    long block_copies = 1;
    CipherVec acc;
    bool have_acc = false;
    long placed = 0;
    long remaining = copies;
    while (remaining > 0) {
        if (remaining & 1) {
            CipherVec shifted = placed == 0 ? block : ctx.rotate(block, -placed * width * stride);
            acc = have_acc ? ctx.add(acc, shifted) : shifted;
            have_acc = true;
            placed += block_copies;
        }
        remaining >>= 1;
        if (remaining > 0) {
            block = ctx.add(block, ctx.rotate(block, -block_copies * width * stride));
            block_copies *= 2;
        }
    }
    return acc;
}
}  // namespace

TileTensor broadcast_dim(HeContext& ctx, const TileTensor& t, int dim, long factor) {
    if (dim != 0 && dim != 1) throw std::invalid_argument("broadcast_dim: dim must be 0 or 1");
    if (factor < 1) throw std::invalid_argument("broadcast_dim: factor must be >= 1");
    if (factor == 1) return t;
    long t1 = t.shape().t1, t2 = t.shape().t2;
    long src = dim == 1 ? t.cols() : t.rows();
    long tile_cap = dim == 1 ? t2 : t1;
    long target = src * factor;
    TileTensor out = t;

    if (src % tile_cap == 0) {
        // Source fills whole tiles along the dim: replication is tile-handle
        // reuse, zero HE operations.
        std::vector<CipherVec> tiles;
        if (dim == 1) {
            for (long gr = 0; gr < t.grid_rows(); ++gr)
                for (long rep = 0; rep < factor; ++rep)
                    for (long gc = 0; gc < t.grid_cols(); ++gc) tiles.push_back(t.tile(gr, gc));
            out.grid_cols_ = t.grid_cols() * factor;
        } else {
            for (long rep = 0; rep < factor; ++rep)
                for (long gr = 0; gr < t.grid_rows(); ++gr)
                    for (long gc = 0; gc < t.grid_cols(); ++gc) tiles.push_back(t.tile(gr, gc));
            out.grid_rows_ = t.grid_rows() * factor;
        }
        out.tiles_ = std::move(tiles);
    } else {
        // Replication inside tiles; shifted copies must not cross a tile row.
        if (target > tile_cap || (dim == 1 ? t.grid_cols() : t.grid_rows()) != 1)
            throw std::invalid_argument("broadcast_dim: incompatible factor");
        long stride = dim == 1 ? 1 : t2;
        // Isolate the valid region first: reduce_dim results carry
        // sliding-window remainders outside it.
        std::vector<Rat> mask(ctx.slots(), Rat(0));
        for (long r = 0; r < t1; ++r)
            for (long c = 0; c < t2; ++c) {
                bool valid = dim == 1 ? (c < src) : (r < src);
                if (valid) mask[static_cast<std::size_t>(r * t2 + c)] = 1;
            }
        for (auto& tile : out.tiles_) {
            CipherVec cur = ctx.pt_mul(ctx.encode(mask), tile);
            tile = replicate_units(ctx, cur, src, stride, factor);
        }
    }
    if (dim == 1) out.cols_ = target; else out.rows_ = target;
    return out;
}

}  // namespace ohsim::pack
