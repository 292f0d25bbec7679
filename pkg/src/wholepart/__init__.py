"""Whole-part structure of finite quantum systems Sigma(n) under divisibility."""
