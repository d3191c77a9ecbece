pub mod corpus;
pub mod f2linalg;
pub mod floercomplex;
pub mod gradedalg;
pub mod maslov;
pub mod par;
pub mod spectral;
pub mod theorems;
