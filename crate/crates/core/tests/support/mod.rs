//! Reference implementations kept independent of the library's fast paths:
//! they walk the ordering through `OrderingSpec::encode/decode` directly
//! (no layout tables) and keep the LRU state as a flat list of
//! `(line, last-use time)` pairs.

#![allow(dead_code)]

use cubeorder_core::{Coord3, OrderingSpec, SurfaceId};

#[derive(Clone, Copy)]
pub enum Centers {
    Interior,
    Border,
    Surface(SurfaceId),
}

pub struct NaiveLru {
    capacity: usize,
    clock: u64,
    lines: Vec<(u64, u64)>,
}

impl NaiveLru {
    pub fn new(capacity: usize) -> Self {
        Self { capacity, clock: 0, lines: Vec::new() }
    }

    /// Returns true on a miss.
    pub fn touch(&mut self, line: u64) -> bool {
        self.clock += 1;
        if let Some(entry) = self.lines.iter_mut().find(|(l, _)| *l == line) {
            entry.1 = self.clock;
            return false;
        }
        if self.lines.len() == self.capacity {
            let (oldest, _) = self.lines.iter().enumerate().min_by_key(|(_, (_, t))| *t).unwrap();
            self.lines.swap_remove(oldest);
        }
        self.lines.push((line, self.clock));
        true
    }
}

/// `(misses, accesses)` for a sweep of the selected centres in path order.
pub fn reference_misses(
    spec: &OrderingSpec,
    g: u32,
    b: u64,
    c: usize,
    centers: Centers,
    centre_only: bool,
) -> (u64, u64) {
    let side = spec.dims().side() as i64;
    let g_i = g as i64;
    let in_border = |p: Coord3| {
        [p.k, p.i, p.j].iter().any(|&x| (x as i64) < g_i || (x as i64) >= side - g_i)
    };
    let mut lru = NaiveLru::new(c);
    let (mut misses, mut accesses) = (0, 0);
    for ipath in 0..spec.dims().volume() {
        let centre = spec.decode(ipath).unwrap();
        let keep = match centers {
            Centers::Interior => !in_border(centre),
            Centers::Border => in_border(centre),
            Centers::Surface(s) => s.contains(centre, side as u32, g),
        };
        if !keep {
            continue;
        }
        let reach = if centre_only { 0 } else { g_i };
        for dk in -reach..=reach {
            for di in -reach..=reach {
                for dj in -reach..=reach {
                    let w = |x: u32, d: i64| (x as i64 + d).rem_euclid(side) as u32;
                    let n = Coord3::new(w(centre.k, dk), w(centre.i, di), w(centre.j, dj));
                    let jpath = spec.encode(n).unwrap();
                    accesses += 1;
                    if lru.touch(jpath / b) {
                        misses += 1;
                    }
                }
            }
        }
    }
    (misses, accesses)
}

pub fn all_coords(side: u32) -> impl Iterator<Item = Coord3> {
    (0..side).flat_map(move |k| (0..side).flat_map(move |i| (0..side).map(move |j| Coord3::new(k, i, j))))
}
