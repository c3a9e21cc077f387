//! Boolean occupancy grid used to place buildings without overlap.

/// Square occupancy grid over the city footprint.
///
/// Cell `(cx, cy)` covers `[cx*cell, (cx+1)*cell) × [cy*cell, (cy+1)*cell)`
/// metres. A `true` cell is occupied.
#[derive(Debug, Clone)]
pub struct OccupancyGrid {
    resolution: usize,
    cell_size: f64,
    cells: Vec<bool>,
}

impl OccupancyGrid {
    /// Empty grid with `resolution` cells per side over a square of
    /// `side` metres.
    pub fn new(resolution: usize, side: f64) -> Self {
        assert!(resolution >= 1, "grid resolution must be >= 1");
        Self {
            resolution,
            cell_size: side / resolution as f64,
            cells: vec![false; resolution * resolution],
        }
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Cell edge length in metres.
    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn is_occupied(&self, cx: usize, cy: usize) -> bool {
        self.cells[cy * self.resolution + cx]
    }

    pub fn occupied_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// Whether the `cw x ch` cell block anchored at `(cx, cy)` is fully
    /// inside the grid and free.
    pub fn block_free(&self, cx: usize, cy: usize, cw: usize, ch: usize) -> bool {
        if cx + cw > self.resolution || cy + ch > self.resolution {
            return false;
        }
        for y in cy..cy + ch {
            for x in cx..cx + cw {
                if self.cells[y * self.resolution + x] {
                    return false;
                }
            }
        }
        true
    }

    /// Mark the cell block anchored at `(cx, cy)` occupied.
    pub fn mark_block(&mut self, cx: usize, cy: usize, cw: usize, ch: usize) {
        debug_assert!(cx + cw <= self.resolution && cy + ch <= self.resolution);
        for y in cy..cy + ch {
            for x in cx..cx + cw {
                self.cells[y * self.resolution + x] = true;
            }
        }
    }

    /// Mark every cell intersected by the rectangle `(x0, y0)..(x1, y1)`
    /// (metres) as occupied. Partially covered cells count.
    pub fn mark_rect(&mut self, x0: f64, y0: f64, x1: f64, y1: f64) {
        let cx0 = ((x0 / self.cell_size).floor().max(0.0)) as usize;
        let cy0 = ((y0 / self.cell_size).floor().max(0.0)) as usize;
        let cx1 = ((x1 / self.cell_size).ceil() as usize).min(self.resolution);
        let cy1 = ((y1 / self.cell_size).ceil() as usize).min(self.resolution);
        for y in cy0..cy1 {
            for x in cx0..cx1 {
                self.cells[y * self.resolution + x] = true;
            }
        }
    }

    /// All anchors whose `cw x ch` block is entirely free.
    pub fn free_anchors(&self, cw: usize, ch: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if cw > self.resolution || ch > self.resolution {
            return out;
        }
        for cy in 0..=self.resolution - ch {
            for cx in 0..=self.resolution - cw {
                if self.block_free(cx, cy, cw, ch) {
                    out.push((cx, cy));
                }
            }
        }
        out
    }
}
