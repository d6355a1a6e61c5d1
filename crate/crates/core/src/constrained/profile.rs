//! Cut profile vectors: per-component (terminal count, cut edges) shapes.

/// One slot: a component holding `kappa` terminals and crossed by `ell`
/// edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub kappa: u32,
    pub ell: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutProfileVector {
    pub slots: Vec<Slot>,
}

impl CutProfileVector {
    pub fn kappa_sum(&self) -> u32 {
        self.slots.iter().map(|s| s.kappa).sum()
    }

    pub fn ell_sum(&self) -> u64 {
        self.slots.iter().map(|s| s.ell).sum()
    }
}

/// Every profile vector for threshold `c` and budget `ell`: at most `c`
/// slots, each with `kappa` in `1..c` and `ell_i` in `1..=ell`, with
/// `c <= Σ kappa <= 2c` and `Σ ell_i <= ell`. Slot order matters.
pub fn enumerate_profiles(c: u32, ell: u64) -> Vec<CutProfileVector> {
    let bounds = Bounds {
        max_slots: c as usize,
        max_kappa: c.saturating_sub(1),
        kappa_floor: c,
        kappa_cap: 2 * c,
        ell,
        sorted: false,
    };
    let mut out = Vec::new();
    bounds.extend(&mut Vec::new(), 0, 0, &mut out);
    out
}

/// Profiles with non-decreasing slots only, as consumed by the base case.
pub(crate) fn canonical_profiles(c: u32, kappa_floor: u32, ell: u64) -> Vec<CutProfileVector> {
    let bounds = Bounds {
        max_slots: c as usize,
        max_kappa: c.saturating_sub(1),
        kappa_floor,
        kappa_cap: 2 * c,
        ell,
        sorted: true,
    };
    let mut out = Vec::new();
    bounds.extend(&mut Vec::new(), 0, 0, &mut out);
    out
}

struct Bounds {
    max_slots: usize,
    max_kappa: u32,
    kappa_floor: u32,
    kappa_cap: u32,
    ell: u64,
    sorted: bool,
}

impl Bounds {
    fn extend(&self, prefix: &mut Vec<Slot>, kappa: u32, ell: u64, out: &mut Vec<CutProfileVector>) {
        if !prefix.is_empty() && kappa >= self.kappa_floor {
            out.push(CutProfileVector { slots: prefix.clone() });
        }
        if prefix.len() == self.max_slots {
            return;
        }
        for k in 1..=self.max_kappa {
            if kappa + k > self.kappa_cap {
                break;
            }
            for l in 1..=self.ell - ell {
                let slot = Slot { kappa: k, ell: l };
                if self.sorted && prefix.last().is_some_and(|&last| last > slot) {
                    continue;
                }
                prefix.push(slot);
                self.extend(prefix, kappa + k, ell + l, out);
                prefix.pop();
            }
        }
    }
}
