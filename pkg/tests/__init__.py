# Test package for arrduality
