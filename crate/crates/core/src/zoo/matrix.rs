//! Classical matrix groups from generator files, validated on load, and their permutation actions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{field, FiniteField};
use crate::error::{Error, Result};
use crate::perm::{Group, Permutation};

/// Largest orbit accepted when converting a matrix group to a permutation group.
pub const ORBIT_LIMIT: usize = 1_000_000;

pub type Matrix = Vec<Vec<u32>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    SL,
    GL,
    SU,
    Sp,
    SO,
    SOplus,
    SOminus,
    Sz,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::SL => "SL",
            Family::GL => "GL",
            Family::SU => "SU",
            Family::Sp => "Sp",
            Family::SO => "SO",
            Family::SOplus => "SO+",
            Family::SOminus => "SO-",
            Family::Sz => "Sz",
        }
    }

    /// Stem of the generator file name, e.g. `SOplus4_3` or `Sz8`.
    pub fn file_stem(self, n: usize, q: u64) -> String {
        match self {
            Family::Sz => format!("Sz{q}"),
            _ => format!("{self:?}{n}_{q}"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The closed-form order of the matrix group.
pub fn classical_order(family: Family, n: usize, q: u64) -> Result<u128> {
    let bad = || Error::InvalidInput(format!("{family}({n},{q}) is not a supported classical group"));
    let too_big = || Error::InvalidInput(format!("the order of {family}({n},{q}) does not fit in 128 bits"));
    let q = q as u128;
    if q < 2 || n == 0 || n > 64 {
        return Err(bad());
    }
    let n32 = n as u32;
    let m = n32 / 2;
    let pow = |e: u32| q.checked_pow(e).ok_or_else(too_big);
    let product = |factors: Vec<Result<u128>>| {
        factors.into_iter().try_fold(1u128, |acc, f| acc.checked_mul(f?).ok_or_else(too_big))
    };
    match family {
        Family::SL => product(
            std::iter::once(pow(n32 * (n32 - 1) / 2)).chain((2..=n32).map(|i| Ok(pow(i)? - 1))).collect(),
        ),
        Family::GL => product(vec![Ok(q - 1), classical_order(Family::SL, n, q as u64)]),
        Family::SU => product(
            std::iter::once(pow(n32 * (n32 - 1) / 2))
                .chain((2..=n32).map(|i| Ok(if i % 2 == 0 { pow(i)? - 1 } else { pow(i)? + 1 })))
                .collect(),
        ),
        Family::Sp if n.is_multiple_of(2) => {
            product(std::iter::once(pow(m * m)).chain((1..=m).map(|i| Ok(pow(2 * i)? - 1))).collect())
        }
        Family::SO if n % 2 == 1 && q % 2 == 1 => {
            product(std::iter::once(pow(m * m)).chain((1..=m).map(|i| Ok(pow(2 * i)? - 1))).collect())
        }
        Family::SOplus | Family::SOminus if n.is_multiple_of(2) && q % 2 == 1 => {
            let qm = pow(m)?;
            let factor = if family == Family::SOplus { qm - 1 } else { qm + 1 };
            product(
                [pow(m * (m - 1)), Ok(factor)].into_iter().chain((1..m).map(|i| Ok(pow(2 * i)? - 1))).collect(),
            )
        }
        Family::Sz if n == 4 => product(vec![Ok(q * q), Ok(q * q + 1), Ok(q - 1)]),
        _ => Err(bad()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symplectic,
    Symmetric,
    Hermitian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormSpec {
    pub kind: FormKind,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub kind: String,
    pub projective: bool,
    pub seed: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub matrix: Matrix,
    pub jordan_blocks: Vec<usize>,
}

/// The matrix-generator document. Matrices are row-major field-element codes acting on row vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixGroupFile {
    pub name: String,
    pub family: Family,
    pub n: usize,
    pub q: u64,
    pub field_order: u32,
    pub form: Option<FormSpec>,
    pub action: ActionSpec,
    pub generators: Vec<Matrix>,
    #[serde(default)]
    pub elements: BTreeMap<String, NamedMatrix>,
    pub expected_order: u128,
    pub action_kernel_order: u128,
    pub provenance: String,
}

/// A validated matrix group: every generator has determinant one (or is invertible, for `GL`)
/// and preserves the form, and the named elements have their declared Jordan types.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub doc: MatrixGroupFile,
    field: Arc<FiniteField>,
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

fn mat_mul(f: &FiniteField, a: &Matrix, b: &Matrix) -> Matrix {
    let l = b[0].len();
    a.iter()
        .map(|row| {
            let mut out = vec![0; l];
            for (t, &x) in row.iter().enumerate() {
                if x != 0 {
                    for (o, &y) in out.iter_mut().zip(&b[t]) {
                        *o = f.add(*o, f.mul(x, y));
                    }
                }
            }
            out
        })
        .collect()
}

fn transpose(a: &Matrix) -> Matrix {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Row-reduces a copy of `a`; returns the rank and the determinant (meaningful when square).
fn eliminate(f: &FiniteField, a: &Matrix) -> (usize, u32) {
    let mut m = a.clone();
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let (mut rank, mut det) = (0, 1);
    for c in 0..cols {
        let Some(r) = (rank..rows).find(|&r| m[r][c] != 0) else {
            det = 0;
            continue;
        };
        if r != rank {
            m.swap(r, rank);
            det = f.neg(det);
        }
        det = f.mul(det, m[rank][c]);
        let inv = f.inv(m[rank][c]).expect("pivot is nonzero");
        for r2 in 0..rows {
            if r2 != rank && m[r2][c] != 0 {
                let factor = f.mul(m[r2][c], inv);
                let pivot = m[rank].clone();
                for (x, y) in m[r2].iter_mut().zip(pivot) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        rank += 1;
    }
    (rank, if rank == rows && rows == cols { det } else { 0 })
}

/// Inverse by Gauss–Jordan elimination, `None` if singular.
fn invert(f: &FiniteField, a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m: Matrix = a.iter().zip(identity(n)).map(|(r, e)| r.iter().copied().chain(e).collect()).collect();
    for c in 0..n {
        let r = (c..n).find(|&r| m[r][c] != 0)?;
        m.swap(r, c);
        let inv = f.inv(m[c][c]).ok()?;
        m[c].iter_mut().for_each(|x| *x = f.mul(*x, inv));
        for r2 in 0..n {
            if r2 != c && m[r2][c] != 0 {
                let factor = m[r2][c];
                let pivot = m[c].clone();
                for (x, y) in m[r2].iter_mut().zip(pivot) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `v ↦ vM`.
pub fn vec_mat(f: &FiniteField, v: &[u32], m: &Matrix) -> Vec<u32> {
    let mut out = vec![0; m[0].len()];
    for (x, row) in v.iter().zip(m) {
        if *x != 0 {
            for (o, &y) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(*x, y));
            }
        }
    }
    out
}

/// Jordan block sizes (decreasing) of a unipotent matrix, `None` if it is not unipotent.
pub fn unipotent_jordan_type(f: &FiniteField, m: &Matrix) -> Option<Vec<usize>> {
    let n = m.len();
    let id = identity(n);
    let u: Matrix = m.iter().zip(&id).map(|(r, s)| r.iter().zip(s).map(|(&x, &y)| f.sub(x, y)).collect()).collect();
    let mut ranks = vec![n];
    let mut power = id;
    for _ in 0..n {
        power = mat_mul(f, &power, &u);
        ranks.push(eliminate(f, &power).0);
    }
    if ranks[n] != 0 {
        return None;
    }
    // at_least[k] = number of blocks of size ≥ k
    let at_least: Vec<usize> = (1..=n).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut blocks = Vec::new();
    for k in (1..=n).rev() {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        blocks.extend(std::iter::repeat_n(k, exactly));
    }
    Some(blocks)
}

impl MatrixGroup {
    pub fn load(path: &Path) -> Result<MatrixGroup> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_doc(serde_json::from_str(&text)?)
    }

    /// Validates a generator document.
    pub fn from_doc(doc: MatrixGroupFile) -> Result<MatrixGroup> {
        let corrupt = |what: String| Error::Verification(format!("{}: {what}", doc.name));
        let formula = classical_order(doc.family, doc.n, doc.q)?;
        if doc.expected_order != formula {
            return Err(corrupt(format!("expected order {} differs from the formula {formula}", doc.expected_order)));
        }
        let field_order = if doc.family == Family::SU { doc.q * doc.q } else { doc.q };
        if doc.field_order as u64 != field_order {
            return Err(corrupt(format!("field order {} should be {field_order}", doc.field_order)));
        }
        let f = field(doc.field_order)?;
        let n = doc.n;
        let well_formed = |m: &Matrix| m.len() == n && m.iter().all(|r| r.len() == n && r.iter().all(|&x| x < f.order()));
        if doc.generators.is_empty() || !doc.generators.iter().all(well_formed) {
            return Err(corrupt("generators are not n×n matrices over the field".into()));
        }
        if doc.action.seed.len() != n || doc.action.seed.iter().all(|&x| x == 0) || doc.action.seed.iter().any(|&x| x >= f.order()) {
            return Err(corrupt("seed is not a nonzero vector".into()));
        }
        let group = MatrixGroup { field: f.clone(), doc: doc.clone() };
        if let Some(form) = &doc.form {
            if !well_formed(&form.matrix) || eliminate(&f, &form.matrix).0 != n {
                return Err(corrupt("form matrix is not a nondegenerate n×n matrix".into()));
            }
            let t = transpose(&form.matrix);
            let shape_ok = match form.kind {
                FormKind::Symmetric => t == form.matrix,
                FormKind::Symplectic => {
                    (0..n).all(|i| form.matrix[i][i] == 0 && (0..n).all(|j| form.matrix[i][j] == f.neg(t[i][j])))
                }
                FormKind::Hermitian => group.conjugate(&t) == form.matrix,
            };
            if !shape_ok {
                return Err(corrupt(format!("form matrix is not {:?}", form.kind)));
            }
        } else if !matches!(doc.family, Family::SL | Family::GL) {
            return Err(corrupt("family requires a form".into()));
        }
        for (i, g) in doc.generators.iter().enumerate() {
            let det = eliminate(&f, g).1;
            let det_ok = if doc.family == Family::GL { det != 0 } else { det == 1 };
            if !det_ok {
                return Err(corrupt(format!("generator {i} has determinant {det}")));
            }
            if !group.preserves_form(g) {
                return Err(corrupt(format!("generator {i} does not preserve the form")));
            }
        }
        for (label, named) in &doc.elements {
            if !well_formed(&named.matrix) || !group.preserves_form(&named.matrix) || eliminate(&f, &named.matrix).1 != 1 {
                return Err(corrupt(format!("element {label} is not in the isometry group")));
            }
            let mut declared = named.jordan_blocks.clone();
            declared.sort_unstable_by(|a, b| b.cmp(a));
            if unipotent_jordan_type(&f, &named.matrix) != Some(declared) {
                return Err(corrupt(format!("element {label} does not have Jordan type {:?}", named.jordan_blocks)));
            }
        }
        Ok(group)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.doc.n
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.doc.generators
    }

    pub fn expected_order(&self) -> u128 {
        self.doc.expected_order
    }

    /// Entrywise `x ↦ x^q` for unitary groups, identity otherwise.
    fn conjugate(&self, m: &Matrix) -> Matrix {
        if self.doc.family != Family::SU {
            return m.clone();
        }
        let times = self.field.degree() / 2;
        m.iter().map(|r| r.iter().map(|&x| self.field.frobenius(x, times)).collect()).collect()
    }

    /// `M J M̄ᵀ = J`.
    pub fn preserves_form(&self, m: &Matrix) -> bool {
        match &self.doc.form {
            None => true,
            Some(form) => mat_mul(&self.field, &mat_mul(&self.field, m, &form.matrix), &transpose(&self.conjugate(m))) == form.matrix,
        }
    }

    /// Number of scalar matrices `λI` of determinant one preserving the form.
    pub fn scalar_count(&self) -> u128 {
        let f = &self.field;
        let n = self.doc.n as u64;
        (1..f.order())
            .filter(|&l| {
                let det_ok = self.doc.family == Family::GL || f.pow(l, n) == 1;
                let form_ok = match self.doc.form.as_ref().map(|s| s.kind) {
                    None => true,
                    Some(FormKind::Hermitian) => f.pow(l, self.doc.q + 1) == 1,
                    Some(_) => f.mul(l, l) == 1,
                };
                det_ok && form_ok
            })
            .count() as u128
    }

    /// Permutation representation on the orbit of the file's seed vector, as vectors or as
    /// projective points. Checks that the image order times the kernel is the classical order.
    pub fn to_permutation(&self, projective: bool) -> Result<PermutationModule> {
        let f = &self.field;
        let key = |v: Vec<u32>| if projective { normalise(f, v) } else { v };
        let seed = key(self.doc.action.seed.clone());
        let mut points = vec![seed.clone()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::from([(seed, 0)]);
        let mut head = 0;
        while head < points.len() {
            let v = points[head].clone();
            head += 1;
            for g in &self.doc.generators {
                let w = key(vec_mat(f, &v, g));
                if !index.contains_key(&w) {
                    if points.len() >= ORBIT_LIMIT {
                        return Err(Error::bound("matrix orbit", points.len() as u128 + 1, ORBIT_LIMIT as u128));
                    }
                    index.insert(w.clone(), points.len() as u32);
                    points.push(w);
                }
            }
        }
        let frame = find_frame(f, &points, self.doc.n);
        let module =
            PermutationModule { matrices: self.clone(), points, index, projective, group: Group::trivial(1), frame };
        let gens: Vec<Permutation> = self.doc.generators.iter().map(|g| module.permutation_of(g)).collect::<Result<_>>()?;
        let group = Group::from_generators(&gens, module.points.len())?;
        let spans = module.frame.is_some();
        let kernel = match (projective, spans) {
            (false, true) => 1,
            (true, true) => self.scalar_count(),
            (_, false) => return Err(Error::Verification(format!("{}: the seed orbit does not span the space", self.doc.name))),
        };
        if projective == self.doc.action.projective && kernel != self.doc.action_kernel_order {
            return Err(Error::Verification(format!(
                "{}: action kernel has order {kernel}, the file declares {}",
                self.doc.name, self.doc.action_kernel_order
            )));
        }
        if group.order() * kernel != self.doc.expected_order {
            return Err(Error::Verification(format!(
                "{}: permutation image has order {} with kernel {kernel}, expected {}",
                self.doc.name,
                group.order(),
                self.doc.expected_order
            )));
        }
        Ok(PermutationModule { group, ..module })
    }
}

fn normalise(f: &FiniteField, mut v: Vec<u32>) -> Vec<u32> {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        let inv = f.inv(lead).expect("lead is nonzero");
        v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
    }
    v
}

/// Points `b_1, …, b_n` forming a basis and a point `c` with every coordinate nonzero in that basis.
#[derive(Clone, Debug)]
struct Frame {
    basis: Vec<usize>,
    basis_inverse: Matrix,
    extra: usize,
    extra_coords: Vec<u32>,
}

fn find_frame(f: &FiniteField, points: &[Vec<u32>], n: usize) -> Option<Frame> {
    let mut basis: Vec<usize> = Vec::new();
    let mut rows: Matrix = Vec::new();
    for (i, v) in points.iter().enumerate() {
        rows.push(v.clone());
        if eliminate(f, &rows).0 == rows.len() {
            basis.push(i);
            if basis.len() == n {
                break;
            }
        } else {
            rows.pop();
        }
    }
    if basis.len() < n {
        return None;
    }
    let basis_inverse = invert(f, &rows)?;
    let (extra, extra_coords) = points.iter().enumerate().find_map(|(i, v)| {
        let coords = vec_mat(f, v, &basis_inverse);
        coords.iter().all(|&x| x != 0).then_some((i, coords))
    })?;
    Some(Frame { basis, basis_inverse, extra, extra_coords })
}

/// A matrix group acting on an orbit of vectors or projective points, with point numbering in
/// breadth-first orbit order.
#[derive(Clone, Debug)]
pub struct PermutationModule {
    matrices: MatrixGroup,
    points: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
    projective: bool,
    group: Group,
    frame: Option<Frame>,
}

impl PermutationModule {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn matrices(&self) -> &MatrixGroup {
        &self.matrices
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    /// The permutation induced by a matrix, failing if it does not preserve the point set.
    pub fn permutation_of(&self, m: &Matrix) -> Result<Permutation> {
        let f = &self.matrices.field;
        let images = self
            .points
            .iter()
            .map(|v| {
                let w = vec_mat(f, v, m);
                let w = if self.projective { normalise(f, w) } else { w };
                self.index.get(&w).copied().ok_or_else(|| Error::NotMember("matrix does not preserve the orbit".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        Permutation::from_images(images)
    }

    /// The permutation of a named element from the generator file, checked to lie in the group.
    pub fn named_element(&self, label: &str) -> Result<Permutation> {
        let named = self.matrices.doc.elements.get(label).ok_or_else(|| {
            Error::InvalidInput(format!("{} has no element named {label}", self.matrices.doc.name))
        })?;
        let g = self.permutation_of(&named.matrix)?;
        self.group.require_member(&g, label)?;
        Ok(g)
    }

    /// A matrix inducing the permutation `g` (determined up to a scalar on projective points).
    pub fn matrix_of(&self, g: &Permutation) -> Result<Matrix> {
        let f = &self.matrices.field;
        let frame = self.frame.as_ref().ok_or_else(|| Error::InvalidInput("the orbit does not span the space".into()))?;
        if g.degree() != self.points.len() {
            return Err(Error::DegreeMismatch { expected: self.points.len(), found: g.degree() });
        }
        let images: Matrix = frame.basis.iter().map(|&b| self.points[g.image(b as u32) as usize].clone()).collect();
        let scaled: Matrix = if self.projective {
            let inverse = invert(f, &images).ok_or_else(|| Error::NotMember("permutation is not induced by a matrix".into()))?;
            let beta = vec_mat(f, &self.points[g.image(frame.extra as u32) as usize], &inverse);
            images
                .iter()
                .zip(beta.iter().zip(&frame.extra_coords))
                .map(|(row, (&b, &a))| {
                    let lambda = f.mul(b, f.inv(a).expect("frame coordinates are nonzero"));
                    row.iter().map(|&x| f.mul(lambda, x)).collect()
                })
                .collect()
        } else {
            images
        };
        let m = mat_mul(f, &frame.basis_inverse, &scaled);
        if self.permutation_of(&m).ok().as_ref() != Some(g) {
            return Err(Error::NotMember("permutation is not induced by a matrix".into()));
        }
        Ok(m)
    }

    /// Jordan type of the unipotent matrix inducing `g`, `None` if no unipotent matrix does.
    pub fn unipotent_type(&self, g: &Permutation) -> Result<Option<Vec<usize>>> {
        let f = &self.matrices.field;
        let m = self.matrix_of(g)?;
        let scalars: Vec<u32> = if self.projective { (1..f.order()).collect() } else { vec![1] };
        Ok(scalars.into_iter().find_map(|l| {
            let scaled: Matrix = m.iter().map(|r| r.iter().map(|&x| f.mul(l, x)).collect()).collect();
            unipotent_jordan_type(f, &scaled)
        }))
    }

    pub fn element_labels(&self) -> Vec<String> {
        self.matrices.doc.elements.keys().cloned().collect()
    }
}

/// Loads and validates the generator file of `family(n, q)` from a data directory.
pub fn matrix_group(family: Family, n: usize, q: u64, dir: &Path) -> Result<MatrixGroup> {
    let path = dir.join("matrices").join(format!("{}.json", family.file_stem(n, q)));
    if !path.exists() {
        return Err(Error::InvalidInput(format!("no generator file for {family}({n},{q})")));
    }
    let group = MatrixGroup::load(&path)?;
    if (group.doc.family, group.doc.n, group.doc.q) != (family, n, q) {
        return Err(Error::Verification(format!("{} describes a different group", path.display())));
    }
    Ok(group)
}
