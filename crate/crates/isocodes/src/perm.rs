//! Permutations of coordinate sets and permutation groups.
//!
//! A permutation on `n` points is a `Vec<usize>` with `p[i]` the image of `i`.
//! [`PermGroup`] maintains a base and strong generating set (Schreier-Sims),
//! which gives exact group orders and membership tests; it is used to measure
//! automorphism groups discovered during canonical labeling.

use num::BigUint;

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn is_identity(p: &Perm) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

/// `compose(f, g)` applies `g` first: the result maps `i` to `f[g[i]]`.
pub fn compose(f: &Perm, g: &Perm) -> Perm {
    debug_assert_eq!(f.len(), g.len());
    g.iter().map(|&x| f[x]).collect()
}

pub fn inverse(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Calls `f` with every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation<F: FnMut(&Perm)>(n: usize, mut f: F) {
    let mut a = identity(n);
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Orbit of `start` under a set of permutations.
pub fn orbit(n: usize, gens: &[&Perm], start: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut queue = vec![start];
    seen[start] = true;
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for g in gens {
            let y = g[x];
            if !seen[y] {
                seen[y] = true;
                queue.push(y);
            }
        }
    }
    queue
}

/// A permutation group built incrementally from generators, with a base and
/// strong generating set kept consistent after every insertion.
pub struct PermGroup {
    n: usize,
    base: Vec<usize>,
    strong: Vec<Perm>,
    /// `transversals[i][x]` is a coset representative mapping `base[i]` to
    /// `x`, for `x` in the orbit of `base[i]` under the level-`i` stabilizer.
    transversals: Vec<Vec<Option<Perm>>>,
}

impl PermGroup {
    pub fn new(n: usize) -> Self {
        PermGroup {
            n,
            base: vec![],
            strong: vec![],
            transversals: vec![],
        }
    }

    pub fn from_generators(n: usize, gens: &[Perm]) -> Self {
        let mut g = Self::new(n);
        for p in gens {
            g.add_generator(p.clone());
        }
        g
    }

    pub fn order(&self) -> BigUint {
        let mut ord = BigUint::from(1u8);
        for t in &self.transversals {
            let orbit_size = t.iter().filter(|x| x.is_some()).count();
            ord *= BigUint::from(orbit_size);
        }
        ord
    }

    pub fn contains(&self, p: &Perm) -> bool {
        assert_eq!(p.len(), self.n);
        self.sift_from(0, p.clone()).is_none()
    }

    /// Adds a generator; returns whether the group grew.
    pub fn add_generator(&mut self, p: Perm) -> bool {
        assert_eq!(p.len(), self.n);
        if self.contains(&p) {
            return false;
        }
        self.insert_strong(p);
        self.close();
        true
    }

    /// Strips `p` through levels `start..`; `None` means it reduced to the
    /// identity, otherwise the residue (which fixes every base point up to
    /// the level where stripping stopped) is returned.
    fn sift_from(&self, start: usize, p: Perm) -> Option<Perm> {
        let mut h = p;
        for i in start..self.base.len() {
            let x = h[self.base[i]];
            match &self.transversals[i][x] {
                None => return Some(h),
                Some(t) => h = compose(&inverse(t), &h),
            }
        }
        if is_identity(&h) {
            None
        } else {
            Some(h)
        }
    }

    fn insert_strong(&mut self, p: Perm) {
        // Make sure some base point is moved by p.
        if self.base.iter().all(|&b| p[b] == b) {
            let pt = (0..self.n)
                .find(|&i| p[i] != i)
                .expect("identity must not be inserted");
            self.base.push(pt);
            self.transversals.push(vec![None; self.n]);
        }
        self.strong.push(p);
    }

    fn level_gens(&self, level: usize) -> Vec<&Perm> {
        self.strong
            .iter()
            .filter(|g| self.base[..level].iter().all(|&b| g[b] == b))
            .collect()
    }

    fn rebuild_transversal(&mut self, level: usize) {
        let gens: Vec<Perm> = self.level_gens(level).into_iter().cloned().collect();
        let b = self.base[level];
        let mut t: Vec<Option<Perm>> = vec![None; self.n];
        t[b] = Some(identity(self.n));
        let mut queue = vec![b];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for g in &gens {
                let y = g[x];
                if t[y].is_none() {
                    let rep = compose(g, t[x].as_ref().unwrap());
                    t[y] = Some(rep);
                    queue.push(y);
                }
            }
        }
        self.transversals[level] = t;
    }

    /// Re-establishes the strong generating property: every Schreier
    /// generator of every level strips to the identity through the deeper
    /// levels.  Residues are inserted and the scan restarted until clean.
    fn close(&mut self) {
        'restart: loop {
            for i in 0..self.base.len() {
                self.rebuild_transversal(i);
            }
            let mut level = self.base.len();
            while level > 0 {
                level -= 1;
                if let Some(residue) = self.find_schreier_residue(level) {
                    self.insert_strong(residue);
                    continue 'restart;
                }
            }
            return;
        }
    }

    fn find_schreier_residue(&self, level: usize) -> Option<Perm> {
        let gens = self.level_gens(level);
        let t = &self.transversals[level];
        for x in 0..self.n {
            let Some(tx) = &t[x] else { continue };
            for g in &gens {
                let y = g[x];
                let ty = t[y].as_ref().expect("orbit closed under generators");
                let sg = compose(&inverse(ty), &compose(g, tx));
                if let Some(residue) = self.sift_from(level + 1, sg) {
                    return Some(residue);
                }
            }
        }
        None
    }
}
