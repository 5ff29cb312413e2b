"""Free subalgebras of varieties of nonassociative algebras: exact arithmetic,
freeness certificates up to a degree bound, and the parametric
specialization machinery."""
