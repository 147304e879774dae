// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "ohsim/simd.hpp"

namespace ohsim::pack {

using Matrix = std::vector<std::vector<Rat>>;

/// Tile geometry [t1, t2] with t1 * t2 = s. The shape string notation
/// "[m/t1,n/t2]" names the logical dims it slices.
struct TileShape {
    long t1 = 1;
    long t2 = 1;

    static TileShape make(long t1, long t2, std::size_t slot_count);
    /// Parses "[m/t1,n/t2]"; "s" is accepted for either divisor and any
    /// symbolic numerators are ignored (they describe the logical dims).
    static TileShape parse(const std::string& text, std::size_t slot_count);
    std::string str(long m, long n) const;
    /// All factor pairs (t1, t2) of the slot count.
    static std::vector<TileShape> enumerate(std::size_t slot_count);
};

/// Logical [rows, cols] matrix partitioned into [t1, t2] tiles, one CipherVec
/// per tile, flattened row-major (slot of (r, c) inside its tile is
/// (r mod t1) * t2 + (c mod t2)). Padding slots are zero. Immutable after
/// construction.
class TileTensor {
public:
    TileTensor() = default;

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    const TileShape& shape() const { return shape_; }
    long grid_rows() const { return grid_rows_; }
    long grid_cols() const { return grid_cols_; }
    const CipherVec& tile(long gr, long gc) const;
    const std::vector<CipherVec>& tiles() const { return tiles_; }

private:
    friend TileTensor pack(HeContext&, const Matrix&, TileShape);
    friend Matrix unpack(HeContext&, const TileTensor&);
    friend TileTensor ew_add(HeContext&, const TileTensor&, const TileTensor&);
    friend TileTensor ew_mul(HeContext&, const TileTensor&, const TileTensor&);
    friend TileTensor ew_pt_mul(HeContext&, const Matrix&, const TileTensor&);
    friend TileTensor reduce_dim(HeContext&, const TileTensor&, int);
    friend TileTensor broadcast_dim(HeContext&, const TileTensor&, int, long);

    long rows_ = 0, cols_ = 0;
    TileShape shape_;
    long grid_rows_ = 0, grid_cols_ = 0;
    std::vector<CipherVec> tiles_;
};

TileTensor pack(HeContext& ctx, const Matrix& m, TileShape shape);
Matrix unpack(HeContext& ctx, const TileTensor& t);

/// Slot-wise ops applied tile-by-tile; shapes must match exactly.
TileTensor ew_add(HeContext& ctx, const TileTensor& a, const TileTensor& b);
TileTensor ew_mul(HeContext& ctx, const TileTensor& a, const TileTensor& b);
/// Plaintext side packed with the same geometry on the fly.
TileTensor ew_pt_mul(HeContext& ctx, const Matrix& plain, const TileTensor& a);

/// Sums along dim (0 = rows, 1 = cols): strided rotate-and-sum inside tiles
/// plus tile-grid additions across tiles. The reduced dim collapses to 1 in
/// the logical shape.
TileTensor reduce_dim(HeContext& ctx, const TileTensor& t, int dim);

/// Cyclic replication along dim: out[r][c] = in[r][c mod cols] (dim = 1), by
/// `factor` copies. Uses rotations within tiles and tile-handle reuse across
/// the grid; a size-1 source dim is first isolated with one mask mult so
/// reduce_dim results can be re-broadcast.
TileTensor broadcast_dim(HeContext& ctx, const TileTensor& t, int dim, long factor);

}  // namespace ohsim::pack
