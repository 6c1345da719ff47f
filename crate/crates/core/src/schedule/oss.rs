use crate::code::{PrototypeMatrix, PUNCTURED_COLUMNS};

use super::Schedule;

/// Layers grouped by how many punctured block columns they touch.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PuncturedClasses {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub p2: Vec<usize>,
}

pub fn classify_rows(proto: &PrototypeMatrix) -> PuncturedClasses {
    let mut classes = PuncturedClasses::default();
    for c in 0..proto.m_p() {
        let punctured = PUNCTURED_COLUMNS
            .iter()
            .filter(|&&v| v < proto.n_p() && proto.shift(c, v).is_some())
            .count();
        match punctured {
            0 => classes.p0.push(c),
            1 => classes.p1.push(c),
            _ => classes.p2.push(c),
        }
    }
    classes
}

/// Optimized static schedule: unpunctured layers first, then singly
/// punctured, both by ascending degree; doubly punctured layers last by
/// descending degree. Ties keep the original row order.
///
/// Column orders are left ascending; see [`reorder_columns`].
pub fn build_oss(proto: &PrototypeMatrix) -> Schedule {
    let classes = classify_rows(proto);
    let d = |c: &usize| proto.row_degree(*c);
    let mut p0 = classes.p0;
    let mut p1 = classes.p1;
    let mut p2 = classes.p2;
    p0.sort_by_key(d);
    p1.sort_by_key(d);
    p2.sort_by_key(|c| std::cmp::Reverse(d(c)));
    let mut schedule = Schedule::natural(proto);
    schedule.layer_order = p0.into_iter().chain(p1).chain(p2).collect();
    schedule
}

/// Reorders block columns so the pipeline overlaps independent work with
/// pending write-backs.
///
/// Each layer's SEL phase writes the columns shared with the next layer
/// first; the MIN phase of the next layer visits its independent columns
/// first and then the shared ones in the order they are written.
pub fn reorder_columns(proto: &PrototypeMatrix, schedule: &Schedule) -> Schedule {
    let order = &schedule.layer_order;
    let m = order.len();
    let mut out = schedule.clone();
    for pos in 0..m {
        let c = order[pos];
        let next = order[(pos + 1) % m];
        let cols = proto.row_columns(c);
        let shared = |v: &&usize| m > 1 && proto.shift(next, **v).is_some();
        out.sel_order[c] = cols
            .iter()
            .filter(shared)
            .chain(cols.iter().filter(|v| !shared(v)))
            .copied()
            .collect();
    }
    if m == 1 {
        return out;
    }
    for pos in 0..m {
        let c = order[pos];
        let prev = schedule.previous_layer(pos);
        let cols = proto.row_columns(c);
        let independent = cols.iter().filter(|&&v| proto.shift(prev, v).is_none());
        let shared = out.sel_order[prev]
            .iter()
            .filter(|&&v| proto.shift(c, v).is_some());
        out.column_order[c] = independent.chain(shared).copied().collect();
    }
    out
}
