"""Test package for coherent_calculus."""
