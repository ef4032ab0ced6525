//! Embeddings between finite fields F_{p^m} -> F_{p^(m*j)}.

use super::factor;
use super::field::{Field, Fq};
use super::poly::Poly;
use crate::error::{Error, Result};

/// An F_p-algebra embedding of one finite field into another, realized by
/// the image of the source generator.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    from: Field,
    to: Field,
    /// powers gen_image^i for i < from.ext_deg()
    gen_powers: Vec<Fq>,
}

impl FieldEmbedding {
    /// Identity embedding.
    pub fn identity(field: &Field) -> FieldEmbedding {
        let k = field.ext_deg();
        let mut gen_powers = Vec::with_capacity(k);
        let g = field.gen();
        let mut acc = field.one();
        for _ in 0..k {
            gen_powers.push(acc);
            acc = field.mul(acc, g);
        }
        FieldEmbedding {
            from: field.clone(),
            to: field.clone(),
            gen_powers,
        }
    }

    /// Construct an embedding by finding a root of the source modulus in the
    /// target field. Deterministic.
    pub fn new(from: &Field, to: &Field) -> Result<FieldEmbedding> {
        if from.p() != to.p() {
            return Err(Error::InvalidInput("different characteristics".into()));
        }
        if to.ext_deg() % from.ext_deg() != 0 {
            return Err(Error::InvalidInput(
                "target degree not a multiple of source degree".into(),
            ));
        }
        if from == to {
            return Ok(Self::identity(from));
        }
        if from.ext_deg() == 1 {
            // prime field embeds as constants
            let mut e = Self::identity(to);
            e.from = from.clone();
            e.gen_powers = vec![to.one()];
            return Ok(e);
        }
        // modulus of `from` is over F_p; reinterpret over `to` and find a root
        let modulus_in_to = Poly::new(
            to.clone(),
            from.modulus()
                .iter()
                .map(|&c| to.from_int(c as i64))
                .collect(),
        );
        let root = factor::any_root(&modulus_in_to).ok_or(Error::EmbeddingUnavailable)?;
        let mut gen_powers = Vec::with_capacity(from.ext_deg());
        let mut acc = to.one();
        for _ in 0..from.ext_deg() {
            gen_powers.push(acc);
            acc = to.mul(acc, root);
        }
        Ok(FieldEmbedding {
            from: from.clone(),
            to: to.clone(),
            gen_powers,
        })
    }

    pub fn from_field(&self) -> &Field {
        &self.from
    }
    pub fn to_field(&self) -> &Field {
        &self.to
    }

    pub fn apply(&self, x: Fq) -> Fq {
        if self.from == self.to {
            return x;
        }
        let digits = self.from.digits(x);
        let mut acc = self.to.zero();
        for (i, &d) in digits.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let c = self.to.from_int(d as i64);
            acc = self.to.add(acc, self.to.mul(c, self.gen_powers[i]));
        }
        acc
    }

    /// Decide whether `y` in the target lies in the embedded image, and if so
    /// return its preimage. Scans the source field; fine at desk scale.
    pub fn preimage(&self, y: Fq) -> Option<Fq> {
        if self.from == self.to {
            return Some(y);
        }
        for x in self.from.elements() {
            if self.apply(x) == y {
                return Some(x);
            }
        }
        None
    }

    pub fn apply_poly(&self, f: &Poly) -> Poly {
        f.map_coeffs(&self.to, |c| self.apply(c))
    }

    /// The image of the source generator.
    pub fn gen_image(&self) -> Fq {
        self.gen_powers
            .get(1)
            .copied()
            .unwrap_or_else(|| self.to.one())
    }

    /// Build the embedding sending the source generator to `image`, which
    /// must be a root of the source modulus in the target field.
    pub fn from_gen_image(from: &Field, to: &Field, image: Fq) -> FieldEmbedding {
        let mut gen_powers = Vec::with_capacity(from.ext_deg());
        let mut acc = to.one();
        for _ in 0..from.ext_deg() {
            gen_powers.push(acc);
            acc = to.mul(acc, image);
        }
        FieldEmbedding {
            from: from.clone(),
            to: to.clone(),
            gen_powers,
        }
    }

    /// Compose with a further embedding: (self: A -> B) then (next: B -> C)
    /// gives A -> C, consistent with both chains.
    pub fn compose(&self, next: &FieldEmbedding) -> FieldEmbedding {
        assert!(next.from_field() == &self.to, "embedding chain mismatch");
        let gen_powers = self.gen_powers.iter().map(|&g| next.apply(g)).collect();
        FieldEmbedding {
            from: self.from.clone(),
            to: next.to_field().clone(),
            gen_powers,
        }
    }
}
