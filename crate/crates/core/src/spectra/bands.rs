//! Band edges from `E(±1)` and the band/gap layout around the circle.

use std::f64::consts::TAU;

use crate::c64;
use crate::cmv::build_floquet;
use crate::error::{Error, Result};
use crate::opuc::VerblunskyWord;
use crate::tolerances::Tolerances;

use super::eigen::{circle_arg, unitary_eigenvalues, UnitarySpectrum};
use super::matching::perfect_matching;

/// Counterclockwise arc from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub start: c64,
    pub end: c64,
}

impl Arc {
    pub fn length(&self) -> f64 {
        (circle_arg(self.end) - circle_arg(self.start)).rem_euclid(TAU)
    }

    /// Membership in the closed arc, with `tol` slack (in radians) at both ends.
    pub fn contains(&self, z: c64, tol: f64) -> bool {
        let len = self.length();
        let mut d = (circle_arg(z) - circle_arg(self.start)).rem_euclid(TAU);
        if d > TAU - tol {
            d -= TAU;
        }
        d >= -tol && d <= len + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeSign {
    Plus,
    Minus,
}

/// Bands and gaps alternating around the circle, with each gap paired to a
/// Dirichlet point.
///
/// `gaps[j]` runs from the end of `bands[j]` to the start of `bands[j + 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandStructure {
    pub bands: Vec<Arc>,
    pub gaps: Vec<Arc>,
    /// `pairing[j]` indexes the Dirichlet point in the closure of `gaps[j]`.
    pub pairing: Vec<usize>,
    pub degenerate: Vec<bool>,
}

impl BandStructure {
    /// Gap endpoints `ζ_1, ζ_2, …, ζ_{2p}` in gap order.
    pub fn zeta(&self) -> Vec<c64> {
        self.gaps.iter().flat_map(|g| [g.start, g.end]).collect()
    }
}

/// Spectra of `E(+1)` and `E(-1)`.
pub fn band_edges(word: &VerblunskyWord, tol: &Tolerances) -> Result<(UnitarySpectrum, UnitarySpectrum)> {
    let plus = build_floquet(word, c64::new(1.0, 0.0), tol.circle)?;
    let minus = build_floquet(word, c64::new(-1.0, 0.0), tol.circle)?;
    Ok((
        unitary_eigenvalues(&plus, tol.cluster)?,
        unitary_eigenvalues(&minus, tol.cluster)?,
    ))
}

const PATTERN: [EdgeSign; 4] = [EdgeSign::Plus, EdgeSign::Minus, EdgeSign::Minus, EdgeSign::Plus];

/// Arranges the `2p` band edges around the circle.
///
/// Going counterclockwise the edge signs read `+ - - +` repeatedly from a
/// suitable starting edge; bands are `[q_1, q_2], [q_3, q_4], …` and gaps the
/// arcs in between. Among the starting offsets that fit the pattern, the
/// first one whose gaps can each be matched with a distinct Dirichlet point
/// (within `tol.pairing`) is used.
pub fn band_layout(
    plus: &UnitarySpectrum,
    minus: &UnitarySpectrum,
    dirichlet: &[c64],
    tol: &Tolerances,
) -> Result<BandStructure> {
    let p = dirichlet.len();
    if plus.total() != p || minus.total() != p {
        return Err(Error::PatternMismatch);
    }
    let mut edges: Vec<(c64, EdgeSign)> = plus
        .expanded()
        .into_iter()
        .map(|z| (z, EdgeSign::Plus))
        .chain(minus.expanded().into_iter().map(|z| (z, EdgeSign::Minus)))
        .collect();
    edges.sort_by(|a, b| circle_arg(a.0).total_cmp(&circle_arg(b.0)));
    let n = edges.len();

    let mut any_pattern = false;
    let mut failed_gap = 0;
    for offset in 0..n {
        if !(0..n).all(|t| edges[(offset + t) % n].1 == PATTERN[t % 4]) {
            continue;
        }
        any_pattern = true;
        let q = |t: usize| edges[(offset + t) % n].0;
        let bands: Vec<Arc> = (0..p).map(|i| Arc { start: q(2 * i), end: q(2 * i + 1) }).collect();
        let gaps: Vec<Arc> = (0..p).map(|i| Arc { start: q(2 * i + 1), end: q(2 * i + 2) }).collect();
        let degenerate: Vec<bool> = gaps.iter().map(|g| g.length() < tol.gap).collect();
        let inside = |j: usize, k: usize| {
            let g = &gaps[j];
            if degenerate[j] {
                (dirichlet[k] - g.start).norm() <= tol.pairing || (dirichlet[k] - g.end).norm() <= tol.pairing
            } else {
                g.contains(dirichlet[k], tol.pairing)
            }
        };
        if let Some(j) = (0..p).find(|&j| !(0..p).any(|k| inside(j, k))) {
            failed_gap = j;
            continue;
        }
        if let Some(pairing) = perfect_matching(p, p, inside) {
            return Ok(BandStructure { bands, gaps, pairing, degenerate });
        }
    }
    if any_pattern {
        Err(Error::PairingFailure(failed_gap))
    } else {
        Err(Error::PatternMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::random_word;
    use crate::spectra::dirichlet::dirichlet_points;
    use crate::spectra::matching::matching_distance;
    use std::f64::consts::PI;

    fn polar(t: f64) -> c64 {
        c64::from_polar(1.0, t)
    }

    #[test]
    fn fixture_edges_and_layout() {
        let tol = Tolerances::default();
        let word = VerblunskyWord::from_pairs(&[(0.5, 0.0), (0.0, 0.0)]).unwrap();
        let (plus, minus) = band_edges(&word, &tol).unwrap();
        assert!(matching_distance(&plus.expanded(), &[polar(PI / 6.0), polar(-PI / 6.0)]) < 1e-12);
        assert!(matching_distance(&minus.expanded(), &[polar(5.0 * PI / 6.0), polar(-5.0 * PI / 6.0)]) < 1e-12);
        assert!((plus.product() - 1.0).norm() < 1e-12);
        assert!((minus.product() - 1.0).norm() < 1e-12);

        let pts = dirichlet_points(&word, &tol).unwrap();
        let layout = band_layout(&plus, &minus, &pts, &tol).unwrap();
        assert_eq!(layout.bands.len(), 2);
        assert_eq!(layout.gaps.len(), 2);
        // Band [e^{iπ/6}, e^{i5π/6}], gap through -1, band [e^{-i5π/6}, e^{-iπ/6}], gap through 1.
        assert!((layout.bands[0].start - polar(PI / 6.0)).norm() < 1e-12);
        assert!((layout.bands[0].end - polar(5.0 * PI / 6.0)).norm() < 1e-12);
        assert!((layout.bands[1].start - polar(-5.0 * PI / 6.0)).norm() < 1e-12);
        assert!((layout.bands[1].end - polar(-PI / 6.0)).norm() < 1e-12);
        assert!((pts[layout.pairing[0]] - c64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((pts[layout.pairing[1]] - c64::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(layout.degenerate, vec![false, false]);
    }

    #[test]
    fn free_word_gaps_collapse() {
        let tol = Tolerances::default();
        let word = VerblunskyWord::free(4).unwrap();
        let (plus, minus) = band_edges(&word, &tol).unwrap();
        assert_eq!(plus.multiplicities, vec![2, 2]);
        assert_eq!(minus.multiplicities, vec![2, 2]);
        assert!((plus.eigenvalues[0] - 1.0).norm() < 1e-12);
        assert!((plus.eigenvalues[1] + 1.0).norm() < 1e-12);
        assert!((minus.eigenvalues[0] - c64::new(0.0, 1.0)).norm() < 1e-12);
        assert!((minus.eigenvalues[1] - c64::new(0.0, -1.0)).norm() < 1e-12);
        let pts = dirichlet_points(&word, &tol).unwrap();
        let layout = band_layout(&plus, &minus, &pts, &tol).unwrap();
        assert_eq!(layout.degenerate, vec![true; 4]);
        for (j, g) in layout.gaps.iter().enumerate() {
            assert!((pts[layout.pairing[j]] - g.start).norm() < 1e-10);
        }
    }

    #[test]
    fn random_layouts_pair_every_gap() {
        let tol = Tolerances::default();
        for p in [2usize, 4, 6, 8] {
            for seed in 0..40u64 {
                let word = random_word(p, 0.9, 77 + seed);
                let (plus, minus) = band_edges(&word, &tol).unwrap();
                let pts = dirichlet_points(&word, &tol).unwrap();
                let layout = band_layout(&plus, &minus, &pts, &tol).unwrap();
                assert_eq!(layout.bands.len(), p);
                let mut used = layout.pairing.clone();
                used.sort();
                assert_eq!(used, (0..p).collect::<Vec<_>>());
                for (j, g) in layout.gaps.iter().enumerate() {
                    assert!(g.contains(pts[layout.pairing[j]], tol.pairing));
                }
                let covered: f64 = layout.bands.iter().chain(&layout.gaps).map(Arc::length).sum();
                assert!((covered - TAU).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn mislabeled_edges_are_rejected() {
        let tol = Tolerances::default();
        let plus = UnitarySpectrum { eigenvalues: vec![polar(0.1), polar(0.2)], multiplicities: vec![1, 1] };
        // + + - - fits from the second edge, but both points sit in one gap.
        let minus = UnitarySpectrum { eigenvalues: vec![polar(3.0), polar(3.1)], multiplicities: vec![1, 1] };
        // Signs read + - + -, which fits no rotation of + - - +.
        let minus_bad = UnitarySpectrum { eigenvalues: vec![polar(0.15), polar(3.0)], multiplicities: vec![1, 1] };
        assert_eq!(
            band_layout(&plus, &minus_bad, &[polar(1.0), polar(4.0)], &tol),
            Err(Error::PatternMismatch)
        );
        assert!(matches!(
            band_layout(&plus, &minus, &[polar(0.15), polar(0.17)], &tol),
            Err(Error::PairingFailure(_))
        ));
    }

    #[test]
    fn arc_membership_wraps() {
        let arc = Arc { start: polar(-0.1), end: polar(0.1) };
        assert!(arc.contains(c64::new(1.0, 0.0), 0.0));
        assert!(!arc.contains(polar(0.2), 1e-6));
        assert!(arc.contains(polar(0.1 + 1e-8), 1e-6));
    }
}
