"""Generic-freeness certificates and the affine-group polynomial verifier."""
