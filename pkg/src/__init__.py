# Certified Stirling bounds package
