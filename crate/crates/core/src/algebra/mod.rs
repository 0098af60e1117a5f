pub mod bivariate;
pub mod field;
pub mod fq;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod squarefree;
