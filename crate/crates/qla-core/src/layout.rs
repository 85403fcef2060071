//! Cell-grid geometry: logical-qubit tiles, channels between them, and
//! teleportation-island placement.
//!
//! The chip is a 2-D grid of 20 µm cells. Logical qubits occupy rectangular
//! tiles separated by ballistic channels; repeater islands sit in the
//! channels. Only distances and areas feed the latency and noise models, so
//! the intra-tile cell map is kept abstract.

use crate::params::TechnologyParams;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Channel width added in the x direction between tiles (cells).
pub const DEFAULT_CHANNEL_X: u64 = 11;
/// Channel width added in the y direction between tiles (cells).
pub const DEFAULT_CHANNEL_Y: u64 = 12;

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error("layout must have at least one row and one column (got {rows} x {cols})")]
    EmptyLayout { rows: u64, cols: u64 },
    #[error("island spacing {spacing} cells is smaller than one tile pitch ({pitch} cells)")]
    SpacingBelowPitch { spacing: u64, pitch: u64 },
    #[error("tile coordinate ({row}, {col}) outside {rows} x {cols} layout")]
    OutOfBounds { row: u64, col: u64, rows: u64, cols: u64 },
    #[error("qubit count must be at least 1")]
    NoQubits,
}

/// What a grid cell holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cell {
    DataIon,
    CoolingIon,
    Electrode,
    ChannelEmpty,
    Island,
}

/// Error-correcting code realized by a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeKind {
    /// Steane `[[7,1,3]]` CSS code; transversal universal gates.
    Steane713,
    /// 3-qubit bit-flip repetition code, used only to validate the
    /// simulator against closed-form failure rates.
    Bitflip31,
}

/// Geometry of one logical-qubit tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalQubitTile {
    /// Recursion level (1 or 2).
    pub level: u8,
    pub width_cells: u64,
    pub height_cells: u64,
    pub code: CodeKind,
    /// Average ballistic hop between level-1 blocks inside the tile (cells).
    /// This is a design property of the block alignment, not derived from
    /// the cell map.
    pub avg_hop_cells: u64,
}

impl LogicalQubitTile {
    /// The level-2 Steane tile: one 7-block data column flanked by two
    /// identical ancilla conglomerations, 36 x 147 cells.
    pub fn steane_level2() -> Self {
        LogicalQubitTile {
            level: 2,
            width_cells: 36,
            height_cells: 147,
            code: CodeKind::Steane713,
            avg_hop_cells: 12,
        }
    }

    /// A single level-1 Steane block group (data + two ancilla blocks).
    pub fn steane_level1() -> Self {
        LogicalQubitTile {
            level: 1,
            width_cells: 36,
            height_cells: 21,
            code: CodeKind::Steane713,
            avg_hop_cells: 12,
        }
    }

    /// The 3-qubit bit-flip validation tile: 3 data + ancilla on one block row.
    pub fn bitflip_level1() -> Self {
        LogicalQubitTile {
            level: 1,
            width_cells: 12,
            height_cells: 9,
            code: CodeKind::Bitflip31,
            avg_hop_cells: 4,
        }
    }

    /// Tile pitch including the channel on one side, x then y (cells).
    pub fn pitch_cells(&self) -> (u64, u64) {
        (
            self.width_cells + DEFAULT_CHANNEL_X,
            self.height_cells + DEFAULT_CHANNEL_Y,
        )
    }
}

/// Abstract cell map of one level-1 block: ion positions on the block
/// template, at block granularity rather than electrode-exact. Only the
/// distances feed the latency and noise models.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockTemplate {
    /// (x, y, kind) for each occupied cell within the block.
    pub cells: Vec<(u64, u64, Cell)>,
    pub width_cells: u64,
    pub height_cells: u64,
}

/// Level-1 block template: a data row, an ancilla row and a verification
/// row of `code_n` ions each (roles are positional; all are data-ion
/// cells), interleaved with their cooling ions and framed by electrode
/// rows.
pub fn block_template(code_n: u64) -> BlockTemplate {
    let width = 2 * code_n - 1;
    let mut cells = Vec::new();
    for row in [0u64, 2, 4] {
        for i in 0..code_n {
            cells.push((2 * i, row, Cell::DataIon));
            if i + 1 < code_n {
                cells.push((2 * i + 1, row, Cell::CoolingIon));
            }
        }
    }
    for x in 0..width {
        for y in [1, 3] {
            cells.push((x, y, Cell::Electrode));
        }
    }
    BlockTemplate {
        cells,
        width_cells: width,
        height_cells: 5,
    }
}

/// Position of a logical qubit in the tile grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TileCoordinate {
    pub row: u64,
    pub col: u64,
}

impl TileCoordinate {
    pub fn new(row: u64, col: u64) -> Self {
        TileCoordinate { row, col }
    }
}

/// The full chip layout: a rows x cols grid of identical tiles with
/// channels between them and teleportation islands in the channels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileLayout {
    pub rows: u64,
    pub cols: u64,
    pub tile: LogicalQubitTile,
    pub channel_width_x: u64,
    pub channel_width_y: u64,
    /// Island spacing along x (cells). Islands in y occur at every qubit row.
    pub island_spacing_x: u64,
    /// Island positions in cell coordinates (x, y), placed inside channel area.
    pub islands: Vec<(u64, u64)>,
}

impl TileLayout {
    pub fn pitch_x(&self) -> u64 {
        self.tile.width_cells + self.channel_width_x
    }

    pub fn pitch_y(&self) -> u64 {
        self.tile.height_cells + self.channel_width_y
    }

    /// Total layout dimensions in cells, (width, height).
    pub fn dimensions_cells(&self) -> (u64, u64) {
        (self.cols * self.pitch_x(), self.rows * self.pitch_y())
    }

    pub fn qubit_count(&self) -> u64 {
        self.rows * self.cols
    }

    pub fn contains(&self, c: TileCoordinate) -> bool {
        c.row < self.rows && c.col < self.cols
    }
}

/// Build a rows x cols layout of the given tile. Islands are placed at every
/// qubit row in y and every `spacing_x` cells (rounded to the tile grid) in x.
pub fn build_layout(
    rows: u64,
    cols: u64,
    tile: LogicalQubitTile,
    spacing_x: u64,
) -> Result<TileLayout, LayoutError> {
    if rows == 0 || cols == 0 {
        return Err(LayoutError::EmptyLayout { rows, cols });
    }
    let pitch_x = tile.width_cells + DEFAULT_CHANNEL_X;
    let pitch_y = tile.height_cells + DEFAULT_CHANNEL_Y;
    if spacing_x < pitch_x {
        return Err(LayoutError::SpacingBelowPitch {
            spacing: spacing_x,
            pitch: pitch_x,
        });
    }
    // Every ceil(spacing_x / pitch_x) qubits in x, every qubit in y.
    let stride_cols = spacing_x.div_ceil(pitch_x);
    let mut islands = Vec::new();
    for row in 0..rows {
        let y = row * pitch_y + tile.height_cells + DEFAULT_CHANNEL_Y / 2;
        let mut col = 0;
        while col < cols {
            let x = col * pitch_x + tile.width_cells + DEFAULT_CHANNEL_X / 2;
            islands.push((x, y));
            col += stride_cols;
        }
    }
    Ok(TileLayout {
        rows,
        cols,
        tile,
        channel_width_x: DEFAULT_CHANNEL_X,
        channel_width_y: DEFAULT_CHANNEL_Y,
        island_spacing_x: spacing_x,
        islands,
    })
}

/// Chip area in m² for `qubit_count` logical qubits: each qubit occupies one
/// tile pitch (tile plus its channel share) of 20 µm cells.
pub fn chip_area(
    qubit_count: u64,
    tile: LogicalQubitTile,
    params: &TechnologyParams,
) -> Result<f64, LayoutError> {
    if qubit_count == 0 {
        return Err(LayoutError::NoQubits);
    }
    let (px, py) = tile.pitch_cells();
    let cell_m = params.cell_pitch_um * 1e-6;
    Ok(qubit_count as f64 * (px * py) as f64 * cell_m * cell_m)
}

/// Area in m² of a bare tile without channel share.
pub fn tile_area(tile: LogicalQubitTile, params: &TechnologyParams) -> f64 {
    let cell_m = params.cell_pitch_um * 1e-6;
    (tile.width_cells * tile.height_cells) as f64 * cell_m * cell_m
}

/// Center-to-center channel distance between two tile sites, in cells:
/// |Δcol| x pitch_x + |Δrow| x pitch_y.
pub fn manhattan_distance(
    a: TileCoordinate,
    b: TileCoordinate,
    layout: &TileLayout,
) -> Result<u64, LayoutError> {
    for c in [a, b] {
        if !layout.contains(c) {
            return Err(LayoutError::OutOfBounds {
                row: c.row,
                col: c.col,
                rows: layout.rows,
                cols: layout.cols,
            });
        }
    }
    let dx = a.col.abs_diff(b.col) * layout.pitch_x();
    let dy = a.row.abs_diff(b.row) * layout.pitch_y();
    Ok(dx + dy)
}

/// JSON-ready layout summary emitted by the CLI.
#[derive(Debug, Serialize)]
pub struct LayoutSummary {
    pub rows: u64,
    pub cols: u64,
    pub qubits: u64,
    pub tile_width_cells: u64,
    pub tile_height_cells: u64,
    pub pitch_x_cells: u64,
    pub pitch_y_cells: u64,
    pub total_width_cells: u64,
    pub total_height_cells: u64,
    pub island_count: usize,
    pub islands_xy_cells: Vec<(u64, u64)>,
}

impl LayoutSummary {
    pub fn from_layout(layout: &TileLayout) -> Self {
        let (w, h) = layout.dimensions_cells();
        LayoutSummary {
            rows: layout.rows,
            cols: layout.cols,
            qubits: layout.qubit_count(),
            tile_width_cells: layout.tile.width_cells,
            tile_height_cells: layout.tile.height_cells,
            pitch_x_cells: layout.pitch_x(),
            pitch_y_cells: layout.pitch_y(),
            total_width_cells: w,
            total_height_cells: h,
            island_count: layout.islands.len(),
            islands_xy_cells: layout.islands.clone(),
        }
    }
}
