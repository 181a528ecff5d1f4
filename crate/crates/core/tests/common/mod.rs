#![allow(dead_code)]

pub mod frobenius;
pub mod oracle;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use divide_kh::complex::{Generator, GradedComplex};
use divide_kh::states::StateCube;
use divide_kh::{random_divide, Crossing, Divide, WallItem};

/// Seeded random divides: `count` of them with `0..=max_points` points on 1 to 5 strands.
pub fn random_suite(count: u64, max_points: usize) -> Vec<Divide> {
    (0..count)
        .map(|seed| random_divide(seed, (seed % (max_points as u64 + 1)) as usize, 1 + (seed / 3 % 5) as usize))
        .collect()
}

/// Generator relabeling induced by swapping the far-apart letters at `at`, `at + 1`.
///
/// Points `at` and `at + 1` trade places, and components are matched
/// through an elementary arc outside the gap between the two columns.
pub fn far_commute_relabel(before: &Divide, after: &Divide, at: usize) -> HashMap<Generator, Generator> {
    let cb = StateCube::new(before, 24).unwrap();
    let ca = StateCube::new(after, 24).unwrap();
    let n = cb.strands() as u32;
    let skip_gap = (at + 1) as u32;
    let mut map = HashMap::new();
    for full in cb.vertices() {
        let (x, y) = ((full >> at) & 1, (full >> (at + 1)) & 1);
        let swapped = full & !(0b11 << at) | (y << at) | (x << (at + 1));
        let sb = cb.components(full);
        let sa = ca.components(swapped);
        let target: Vec<u32> = sb
            .components
            .iter()
            .map(|comp| {
                let arc = *comp.arcs.iter().find(|&&a| a / n != skip_gap).expect("component leaves the gap");
                sa.arc_component[arc as usize]
            })
            .collect();
        for signs in 0..1u64 << sb.len() {
            let mapped = target.iter().enumerate().filter(|(q, _)| (signs >> q) & 1 == 1).fold(0u64, |acc, (_, &t)| acc | (1 << t));
            map.insert(Generator { state: full, signs }, Generator { state: swapped, signs: mapped });
        }
    }
    map
}

pub type Canonical = BTreeMap<(i64, i64), (BTreeSet<Generator>, BTreeSet<(Generator, Generator)>)>;

pub fn relabel(canonical: &Canonical, map: &HashMap<Generator, Generator>) -> Canonical {
    canonical
        .iter()
        .map(|(&k, (gens, entries))| {
            (k, (gens.iter().map(|g| map[g]).collect(), entries.iter().map(|(a, b)| (map[a], map[b])).collect()))
        })
        .collect()
}

/// Canonical form of a complex, for comparisons across relabelings.
pub fn canonical(c: &GradedComplex) -> Canonical {
    c.canonical_form()
}

/// Three-strand divides containing a braid triple at word index `at`.
pub fn braid_suite() -> Vec<(Divide, usize)> {
    use WallItem::*;
    let walls: [(Vec<WallItem>, Vec<WallItem>); 4] = [
        (vec![Endpoint; 3], vec![Endpoint; 3]),
        (vec![TurnBack, Endpoint], vec![Endpoint; 3]),
        (vec![Endpoint, TurnBack], vec![TurnBack, Endpoint]),
        (vec![Endpoint; 3], vec![Endpoint, TurnBack]),
    ];
    let mut out = Vec::new();
    for (left, right) in walls {
        for plus in [true, false] {
            for p in [1usize, 2] {
                let mk = |q: usize| if plus { Crossing::plus(q) } else { Crossing::minus(q) };
                let q = if p == 1 { 2 } else { 1 };
                let triple = vec![mk(p), mk(q), mk(p)];
                let prefixes: [Vec<Crossing>; 3] = [vec![], vec![Crossing::minus(2)], vec![Crossing::plus(1), Crossing::minus(1)]];
                for prefix in prefixes {
                    let at = prefix.len();
                    let word = [prefix, triple.clone()].concat();
                    out.push((Divide::new(left.clone(), word, right.clone()), at));
                }
            }
        }
    }
    out
}
