//! Dense Hermitian eigensolvers that exploit block structure.
//!
//! Most operators built in this crate commute with some photon-number
//! difference, so their matrices are block diagonal up to a permutation. The
//! solvers below find the connected components of the nonzero pattern and
//! diagonalize each block on its own. This is exact: a permutation similarity
//! does not change the spectrum.

use nalgebra::{Complex, DMatrix, Dyn, SymmetricEigen};

pub type C64 = Complex<f64>;

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Attach the larger root under the smaller one so component
            // order only depends on the matrix.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Index sets of the connected components of the nonzero pattern of `m`,
/// each sorted ascending, ordered by their smallest index.
pub fn components(m: &DMatrix<C64>) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut set = DisjointSet::new(n);
    for j in 0..n {
        for i in 0..j {
            let (a, b) = (m[(i, j)], m[(j, i)]);
            if a.re != 0.0 || a.im != 0.0 || b.re != 0.0 || b.im != 0.0 {
                set.union(i, j);
            }
        }
    }
    let mut root_slot = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = set.find(i);
        if root_slot[r] == usize::MAX {
            root_slot[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[root_slot[r]].push(i);
    }
    blocks
}

fn block_of(m: &DMatrix<C64>, idx: &[usize]) -> DMatrix<C64> {
    let k = idx.len();
    // Symmetrize so round-off never makes the solver see a non-Hermitian input.
    DMatrix::from_fn(k, k, |a, b| {
        (m[(idx[a], idx[b])] + m[(idx[b], idx[a])].conj()) * 0.5
    })
}

/// `SymmetricEigen` of one block. The QR iteration occasionally returns NaN
/// when the tridiagonal form has exact zeros off the diagonal; a shifted copy
/// has the same eigenvectors and avoids them. If every attempt fails the NaN
/// is passed on for the caller's spectrum checks to reject.
fn block_eigen(block: DMatrix<C64>) -> SymmetricEigen<C64, Dyn> {
    let broken = |e: &SymmetricEigen<C64, Dyn>| e.eigenvalues.iter().any(|x| x.is_nan());
    let eig = SymmetricEigen::new(block.clone());
    if !broken(&eig) {
        return eig;
    }
    let n = block.nrows();
    let scale = block.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    for shift in [scale, -scale, 0.5 * scale] {
        let shifted = &block + DMatrix::<C64>::identity(n, n) * C64::new(shift, 0.0);
        let mut eig = SymmetricEigen::new(shifted);
        if !broken(&eig) {
            eig.eigenvalues.iter_mut().for_each(|x| *x -= shift);
            return eig;
        }
    }
    eig
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn eigvalsh(m: &DMatrix<C64>) -> Vec<f64> {
    assert!(m.is_square(), "eigvalsh needs a square matrix");
    let mut out = Vec::with_capacity(m.nrows());
    for idx in components(m) {
        if idx.len() == 1 {
            out.push(m[(idx[0], idx[0])].re);
            continue;
        }
        let eig = block_eigen(block_of(m, &idx));
        out.extend(eig.eigenvalues.iter().copied());
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Full eigendecomposition of a Hermitian matrix. Column `j` of the returned
/// matrix is the eigenvector for eigenvalue `j`; the order follows the block
/// decomposition and is not sorted.
pub fn eigh(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    assert!(m.is_square(), "eigh needs a square matrix");
    let n = m.nrows();
    let mut values = Vec::with_capacity(n);
    let mut vectors = DMatrix::<C64>::zeros(n, n);
    let mut col = 0;
    for idx in components(m) {
        if idx.len() == 1 {
            values.push(m[(idx[0], idx[0])].re);
            vectors[(idx[0], col)] = C64::new(1.0, 0.0);
            col += 1;
            continue;
        }
        let eig = block_eigen(block_of(m, &idx));
        for (j, lambda) in eig.eigenvalues.iter().enumerate() {
            values.push(*lambda);
            for (a, &row) in idx.iter().enumerate() {
                vectors[(row, col)] = eig.eigenvectors[(a, j)];
            }
            col += 1;
        }
    }
    (values, vectors)
}

/// Applies `f` to the spectrum of a Hermitian matrix.
pub fn hermitian_map(m: &DMatrix<C64>, f: impl Fn(f64) -> C64) -> DMatrix<C64> {
    let (values, vectors) = eigh(m);
    let n = m.nrows();
    let mut scaled = vectors.clone();
    for (j, lambda) in values.iter().enumerate() {
        let w = f(*lambda);
        for i in 0..n {
            scaled[(i, j)] *= w;
        }
    }
    scaled * vectors.adjoint()
}

/// Square root of a positive semidefinite matrix; small negative eigenvalues
/// from round-off are treated as zero.
pub fn psd_sqrt(m: &DMatrix<C64>) -> DMatrix<C64> {
    hermitian_map(m, |x| C64::new(x.max(0.0).sqrt(), 0.0))
}

/// `exp(g)` for an anti-Hermitian generator `g`, computed through the
/// spectrum of the Hermitian matrix `i g`.
pub fn expm_antihermitian(g: &DMatrix<C64>) -> DMatrix<C64> {
    let h = g * C64::new(0.0, 1.0);
    hermitian_map(&h, |x| C64::new(0.0, -x).exp())
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm_hermitian(m: &DMatrix<C64>) -> f64 {
    eigvalsh(m).iter().map(|x| x.abs()).sum()
}

/// Sum of singular values of a general complex matrix.
pub fn trace_norm(m: &DMatrix<C64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone().singular_values().iter().sum()
}

/// `m ⊗ m ⊗ ... ⊗ m` with `power` factors.
pub fn kron_power(m: &DMatrix<C64>, power: u32) -> DMatrix<C64> {
    assert!(power >= 1);
    let mut out = m.clone();
    for _ in 1..power {
        out = out.kronecker(m);
    }
    out
}
