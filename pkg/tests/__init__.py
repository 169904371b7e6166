"""Test package for Daily AI News."""