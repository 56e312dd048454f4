package gui;

import java.awt.AWTEvent;
import java.awt.Color;
import java.awt.Graphics;
import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;
import java.awt.event.MouseEvent;
import javax.swing.JComboBox;
import javax.swing.JPanel;

import Drawing.Shapes.coreElements.MyLine;
import Drawing.Shapes.coreElements.MyShape;
import Drawing.Shapes.otherElements.MyOval;
import Drawing.Shapes.otherElements.MyRectangle;

// Panel that stores the figures and lets the user add new ones with the mouse
public class PaintJPanel extends JPanel implements ActionListener {
    private MyShape[] shapes; // figures on the panel
    private int shapeCount; // how many are stored
    private int selectedType; // 0 for the first kind, 1 for the second, 2 for the third
    private MyShape currentShape; // the figure being dragged
    private Color currentColor;

    // empty panel with room for one hundred figures
    public PaintJPanel() {
        shapes = new MyShape[100];
        shapeCount = 0;
        selectedType = 0;
        currentShape = null;
        currentColor = Color.BLACK;
        setBackground(Color.WHITE);
        enableEvents(AWTEvent.MOUSE_EVENT_MASK | AWTEvent.MOUSE_MOTION_EVENT_MASK);
    }

    // choose the kind of figure to create next
    public void setShapeType(int type) {
        selectedType = type;
    }

    // choose the color of the next figure
    public void setCurrentColor(Color color) {
        currentColor = color;
    }

    // undo: forget the newest figure
    public void clearLastShape() {
        if (shapeCount > 0) {
            shapeCount--;
            repaint();
        }
    }

    // remove everything from the panel
    public void clearAll() {
        shapeCount = 0;
        currentShape = null;
        repaint();
    }

    // paint the stored figures, then the one in progress
    public void paintComponent(Graphics g) {
        super.paintComponent(g);
        for (int i = 0; i < shapeCount; i++) {
            shapes[i].draw(g);
        }
        if (currentShape != null) {
            currentShape.draw(g);
        }
    }

    // a press starts a new figure of the selected type, a release stores it
    protected void processMouseEvent(MouseEvent event) {
        if (event.getID() == MouseEvent.MOUSE_PRESSED) {
            if (selectedType == 0) {
                currentShape = new MyLine(event.getX(), event.getY(), event.getX(), event.getY(), currentColor);
            } else if (selectedType == 1) {
                currentShape = new MyOval(event.getX(), event.getY(), event.getX(), event.getY(), currentColor);
            } else {
                currentShape = new MyRectangle(event.getX(), event.getY(), event.getX(), event.getY(), currentColor);
            }
        } else if (event.getID() == MouseEvent.MOUSE_RELEASED && currentShape != null) {
            shapes[shapeCount++] = currentShape;
            currentShape = null;
            repaint();
        }
        super.processMouseEvent(event);
    }

    // dragging resizes the current figure
    protected void processMouseMotionEvent(MouseEvent event) {
        if (event.getID() == MouseEvent.MOUSE_DRAGGED && currentShape != null) {
            currentShape.setX2(event.getX());
            currentShape.setY2(event.getY());
            repaint();
        }
        super.processMouseMotionEvent(event);
    }

    // commands from the buttons and combo boxes of the frame
    public void actionPerformed(ActionEvent event) {
        Color[] colors = { Color.BLACK, Color.RED, Color.BLUE };
        if (event.getActionCommand().equals("undo")) {
            clearLastShape();
        } else if (event.getActionCommand().equals("clear")) {
            clearAll();
        } else if (event.getActionCommand().equals("type")) {
            setShapeType(((JComboBox) event.getSource()).getSelectedIndex());
        } else {
            setCurrentColor(colors[((JComboBox) event.getSource()).getSelectedIndex()]);
        }
    }
}
