use num_bigint::BigUint;
use num_traits::One;

use super::Perm;

struct Level {
    point: usize,
    /// `transversal[b]` maps `point` to `b`, for `b` in the orbit.
    transversal: Vec<Option<Perm>>,
    gens: Vec<Perm>,
}

impl Level {
    fn build(n: usize, point: usize, gens: Vec<Perm>) -> Self {
        let mut transversal: Vec<Option<Perm>> = vec![None; n];
        transversal[point] = Some(Perm::identity(n));
        let mut queue = vec![point];
        let mut head = 0;
        while head < queue.len() {
            let b = queue[head];
            head += 1;
            for g in &gens {
                let c = g.apply(b);
                if transversal[c].is_none() {
                    let u = transversal[b].as_ref().expect("orbit point").then(g);
                    transversal[c] = Some(u);
                    queue.push(c);
                }
            }
        }
        Level {
            point,
            transversal,
            gens,
        }
    }

    fn orbit_len(&self) -> usize {
        self.transversal.iter().filter(|t| t.is_some()).count()
    }
}

/// Strips `g` through the levels starting at `from`; returns the residue and
/// the level where stripping stopped (`levels.len()` if it went through).
fn strip(levels: &[Level], from: usize, mut g: Perm) -> (Perm, usize) {
    for (j, level) in levels.iter().enumerate().skip(from) {
        match &level.transversal[g.apply(level.point)] {
            Some(u) => g = g.then(&u.inverse()),
            None => return (g, j),
        }
    }
    (g, levels.len())
}

fn build_levels(n: usize, base: &[usize], strong: &[Perm]) -> Vec<Level> {
    base.iter()
        .enumerate()
        .map(|(i, &b)| {
            let gens = strong
                .iter()
                .filter(|g| base[..i].iter().all(|&x| g.apply(x) == x))
                .cloned()
                .collect();
            Level::build(n, b, gens)
        })
        .collect()
}

/// Order of the group generated by `gens` on `0..n`.
///
/// Builds a chain of point stabilizers with explicit coset representatives,
/// adding the residue of any Schreier generator that fails to strip and
/// rebuilding until every Schreier generator strips to the identity. The
/// order is then the product of the orbit lengths.
pub fn group_order(n: usize, gens: &[Perm]) -> BigUint {
    let mut strong: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let mut base: Vec<usize> = Vec::new();
    for g in &strong {
        if base.iter().all(|&b| g.apply(b) == b) {
            base.push(g.first_moved().expect("non-identity"));
        }
    }
    'rebuild: loop {
        let levels = build_levels(n, &base, &strong);
        for (i, level) in levels.iter().enumerate() {
            for (b, u) in level.transversal.iter().enumerate() {
                let Some(u) = u else { continue };
                for g in &level.gens {
                    let ug = u.then(g);
                    let v = level.transversal[g.apply(b)]
                        .as_ref()
                        .expect("orbit is closed");
                    let schreier = ug.then(&v.inverse());
                    let (residue, stop) = strip(&levels, i + 1, schreier);
                    if !residue.is_identity() {
                        if stop == levels.len() {
                            base.push(residue.first_moved().expect("non-identity"));
                        }
                        strong.push(residue);
                        continue 'rebuild;
                    }
                }
            }
        }
        return levels
            .iter()
            .map(|l| BigUint::from(l.orbit_len()))
            .fold(BigUint::one(), |a, b| a * b);
    }
}
